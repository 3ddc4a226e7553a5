"""Baseline surrogate tests with brute-force oracles."""

import pytest
from hypothesis import given, strategies as st

from conftest import make_record, random_record
from latent_debate.errors import EmptyInput, LengthMismatch
from latent_debate.grid import Topology, initial_strength
from latent_debate.rng import SplitMix64
from latent_debate.surrogates import (
    Method,
    all_verdicts,
    average_baseline,
    consistency,
    format_consistency_csv,
    latent_debate_verdict,
    majority_baseline,
    random_baseline,
    top_right_baseline,
)


class TestRandomBaseline:
    def test_single_cell_grid_returns_that_cell(self):
        record = make_record([[0.2]])
        for seed in (0, 1, 42, 999):
            verdict = random_baseline(record, seed)
            assert verdict.label is False
            assert verdict.score == pytest.approx(-0.6)

    def test_fixed_seed_is_reproducible(self):
        record = make_record([[0.2, 0.9], [0.4, 0.6], [0.1, 0.8]])
        first = random_baseline(record, 42)
        second = random_baseline(record, 42)
        assert first == second

    def test_uniform_grid_ignores_seed(self):
        record = make_record([[0.9, 0.9], [0.9, 0.9]])
        assert all(random_baseline(record, seed).label for seed in range(20))

    def test_picks_are_actual_cells(self):
        record = make_record([[0.2, 0.9], [0.4, 0.6]])
        cells = {initial_strength(p) for row in record.p_true for p in row}
        assert all(random_baseline(record, seed).score in cells for seed in range(50))


class TestAverageBaseline:
    def test_hand_mean(self):
        # taus 0.2, -0.4, 0.6, 0.1 -> mean 0.125
        record = make_record([[0.6, 0.3], [0.8, 0.55]])
        verdict = average_baseline(record)
        assert verdict.score == pytest.approx(0.125)
        assert verdict.label is True

    def test_symmetric_taus_tie_to_true(self):
        record = make_record([[0.65, 0.35]])  # taus 0.3, -0.3
        verdict = average_baseline(record)
        assert verdict.score == pytest.approx(0.0)
        assert verdict.label is True

    def test_constant_negative_grid(self):
        record = make_record([[0.4, 0.4], [0.4, 0.4]])  # all taus -0.2
        verdict = average_baseline(record)
        assert verdict.score == pytest.approx(-0.2)
        assert verdict.label is False


class TestMajorityBaseline:
    def test_clear_majority(self):
        record = make_record([[0.6, 0.7], [0.8, 0.1]])  # 3 positive, 1 negative
        verdict = majority_baseline(record)
        assert verdict.label is True
        assert verdict.score == pytest.approx(0.5)

    def test_even_split_ties_to_true(self):
        record = make_record([[0.6, 0.7], [0.1, 0.2]])
        verdict = majority_baseline(record)
        assert verdict.label is True
        assert verdict.score == 0.0

    def test_unanimous_negative(self):
        record = make_record([[0.1, 0.2], [0.3, 0.4]])
        verdict = majority_baseline(record)
        assert verdict.label is False
        assert verdict.score == -1.0


class TestTopRightBaseline:
    def test_sign_of_top_right_cell(self):
        record = make_record([[0.1, 0.3], [0.2, 0.8]])
        verdict = top_right_baseline(record)
        assert verdict.label is True
        assert verdict.score == pytest.approx(0.6)

    def test_half_ties_to_true(self):
        record = make_record([[0.1, 0.5]])
        assert top_right_baseline(record).label is True

    def test_ignores_everything_else(self):
        record = make_record([[0.99, 0.99], [0.99, 0.1]])
        assert top_right_baseline(record).label is False


class TestBruteForceEquivalence:
    def test_average_and_majority_match_oracle(self):
        rng = SplitMix64(99)
        for _ in range(100):
            record = random_record(rng)
            taus = []
            for row in record.p_true:
                for p in row:
                    taus.append(2.0 * p - 1.0)
            mean = 0.0
            for t in taus:
                mean += t
            mean /= len(taus)
            pos = sum(1 for t in taus if t >= 0)
            assert average_baseline(record).score == mean
            assert average_baseline(record).label is (mean >= 0)
            assert majority_baseline(record).label is (pos >= len(taus) - pos)
            assert majority_baseline(record).score == (pos - (len(taus) - pos)) / len(taus)


class TestUnanimityPreservation:
    def test_all_surrogates_keep_shared_polarity(self):
        rng = SplitMix64(314)
        for _ in range(20):
            positive = rng.random() < 0.5
            lo, hi = (0.55, 1.0) if positive else (0.0, 0.45)
            record = make_record(
                [[rng.uniform(lo, hi) for _ in range(3)] for _ in range(4)]
            )
            for verdict in all_verdicts(record, seed=42):
                assert verdict.label is positive, verdict.method


class TestLatentDebateVerdict:
    def test_topology_changes_only_debate_verdict(self):
        rng = SplitMix64(7)
        record = random_record(rng, max_tokens=4, max_layers=5, min_layers=2)
        simple = all_verdicts(record, 42, Topology.SIMPLE)
        quad = all_verdicts(record, 42, Topology.QUADRATIC)
        assert simple[:4] == quad[:4]

    def test_score_is_in_range(self):
        rng = SplitMix64(8)
        for _ in range(20):
            verdict = latent_debate_verdict(random_record(rng))
            assert -1.0 <= verdict.score <= 1.0


class TestConsistency:
    def test_partial_agreement(self):
        value = consistency([True, False, True], [True, True, True])
        assert value == pytest.approx(2 / 3)

    def test_identical_lists(self):
        assert consistency([True, False], [True, False]) == 1.0

    def test_full_disagreement(self):
        assert consistency([True, False], [False, True]) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            consistency([True], [True, False])

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            consistency([], [])

    @given(st.lists(st.booleans(), min_size=1, max_size=30))
    def test_self_consistency_is_one(self, labels):
        assert consistency(labels, labels) == 1.0

    @given(
        st.lists(st.booleans(), min_size=1, max_size=30),
        st.randoms(use_true_random=False),
    )
    def test_symmetry(self, a, rnd):
        b = [rnd.random() < 0.5 for _ in a]
        assert consistency(a, b) == consistency(b, a)


class TestConsistencyCsv:
    def test_formatting(self):
        text = format_consistency_csv([(Method.RANDOM, 3, 2 / 3), (Method.AVERAGE, 3, 1.0)])
        assert text == "method,n,consistency\nRandom,3,0.6667\nAverage,3,1.0000\n"
