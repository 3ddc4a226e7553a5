"""Detector tests: boosting behavior, splits, AUROC oracle, persistence."""

import math

import numpy as np
import pytest

from latent_debate.detector import (
    DetectorConfig,
    DetectorModel,
    Leaf,
    Split,
    auroc,
    sigmoid,
    split_dataset,
    train,
    training_logloss,
)
from latent_debate.errors import (
    DimensionError,
    SchemaError,
    SingleClassError,
    TooFewSamples,
)
from latent_debate.features import FEATURE_NAMES, FeatureVector
from latent_debate.rng import SplitMix64

NUM_FEATURES = len(FEATURE_NAMES)


def noise_vector(rng, label):
    return FeatureVector(
        features=tuple(rng.uniform(-1, 1) for _ in range(NUM_FEATURES)),
        label=label,
    )


def separable_vectors(count, feature=3, rng=None):
    """Label is 1 exactly when the chosen feature exceeds 0."""
    rng = rng or SplitMix64(1)
    vectors = []
    for _ in range(count):
        values = [rng.uniform(-1, 1) for _ in range(NUM_FEATURES)]
        vectors.append(FeatureVector(tuple(values), int(values[feature] > 0)))
    return vectors


class TestDetectorConfig:
    def test_defaults_match_documented_run(self):
        config = DetectorConfig()
        assert config.num_trees == 100
        assert config.max_depth == 2
        assert config.learning_rate == 0.03
        assert config.subsample == 0.8
        assert config.colsample_per_tree == 0.8
        assert config.seed == 42
        assert config.train_fraction == 0.5

    @pytest.mark.parametrize(
        "overrides",
        [
            {"learning_rate": 0.0},
            {"learning_rate": 1.5},
            {"subsample": 0.0},
            {"colsample_per_tree": 1.0001},
            {"max_depth": 0},
            {"l2_reg": -0.1},
            {"train_fraction": 1.0},
        ],
    )
    def test_invalid_values_rejected(self, overrides):
        with pytest.raises(ValueError):
            DetectorConfig(**overrides)

    def test_dict_round_trip(self):
        config = DetectorConfig(num_trees=7, seed=5)
        assert DetectorConfig.from_dict(config.to_dict()) == config

    def test_partial_dict_merges_over_defaults(self):
        config = DetectorConfig.from_dict({"seed": 9})
        assert config.seed == 9
        assert config.num_trees == 100

    def test_unknown_key_rejected(self):
        with pytest.raises(SchemaError):
            DetectorConfig.from_dict({"trees": 10})


class TestSplitDataset:
    def test_even_split(self):
        rng = SplitMix64(0)
        vectors = [noise_vector(rng, i % 2) for i in range(100)]
        train_set, test_set = split_dataset(vectors, DetectorConfig())
        assert len(train_set) == 50
        assert len(test_set) == 50
        assert sorted(map(id, train_set + test_set)) == sorted(map(id, vectors))

    def test_same_seed_same_split(self):
        rng = SplitMix64(0)
        vectors = [noise_vector(rng, i % 2) for i in range(30)]
        first = split_dataset(vectors, DetectorConfig(seed=42))
        second = split_dataset(vectors, DetectorConfig(seed=42))
        assert first == second

    def test_floor_on_train(self):
        rng = SplitMix64(0)
        vectors = [noise_vector(rng, i % 2) for i in range(5)]
        train_set, test_set = split_dataset(vectors, DetectorConfig())
        assert (len(train_set), len(test_set)) == (2, 3)

    def test_too_few_samples(self):
        rng = SplitMix64(0)
        with pytest.raises(TooFewSamples):
            split_dataset([noise_vector(rng, 0)] * 3, DetectorConfig())


class TestTrain:
    def test_single_class_rejected(self):
        rng = SplitMix64(0)
        with pytest.raises(SingleClassError):
            train([noise_vector(rng, 1) for _ in range(20)], DetectorConfig())

    def test_logloss_decreases_on_separable_data(self):
        vectors = separable_vectors(200)
        config = DetectorConfig(subsample=1.0, colsample_per_tree=1.0, num_trees=1)
        losses = []
        for rounds in (0, 1, 5, 20, 60):
            model = train(
                vectors,
                DetectorConfig(subsample=1.0, colsample_per_tree=1.0, num_trees=rounds),
            )
            losses.append(training_logloss(model, vectors))
        assert losses == sorted(losses, reverse=True)
        assert losses[-1] < losses[0] / 2
        del config

    def test_every_round_improves_until_saturation(self):
        vectors = separable_vectors(120)
        model = train(
            vectors, DetectorConfig(subsample=1.0, colsample_per_tree=1.0, num_trees=40)
        )
        X = np.array([v.features for v in vectors])
        y = np.array([v.label for v in vectors], dtype=float)
        margins = np.full(len(vectors), model.base_score)
        last = None
        for tree in model.trees:
            from latent_debate.detector.boosting import eval_node_batch

            margins = margins + model.config.learning_rate * eval_node_batch(tree, X)
            p = np.clip(1 / (1 + np.exp(-margins)), 1e-15, 1 - 1e-15)
            loss = float(-(y * np.log(p) + (1 - y) * np.log(1 - p)).mean())
            if last is not None:
                assert loss <= last + 1e-12
            last = loss

    def test_full_sampling_ignores_seed(self):
        vectors = separable_vectors(80)
        a = train(vectors, DetectorConfig(subsample=1.0, colsample_per_tree=1.0, seed=1))
        b = train(vectors, DetectorConfig(subsample=1.0, colsample_per_tree=1.0, seed=999))
        assert a.trees == b.trees
        assert a.base_score == b.base_score

    def test_same_seed_reproducible_with_sampling(self):
        vectors = separable_vectors(80)
        a = train(vectors, DetectorConfig(seed=42))
        b = train(vectors, DetectorConfig(seed=42))
        assert a == b

    def test_noise_features_score_near_chance(self):
        rng = SplitMix64(1)
        vectors = [noise_vector(rng, rng.randrange(2)) for _ in range(200)]
        train_set, test_set = split_dataset(vectors, DetectorConfig())
        model = train(train_set, DetectorConfig())
        scores = [model.predict_proba(v.features) for v in test_set]
        value = auroc(scores, [v.label for v in test_set])
        assert 0.35 <= value <= 0.65

    def test_split_features_respect_dimension(self):
        vectors = separable_vectors(100)
        model = train(vectors, DetectorConfig(num_trees=20))
        from latent_debate.detector.boosting import node_features

        used = set().union(*(node_features(t) for t in model.trees))
        assert used <= set(range(NUM_FEATURES))


class TestPredictProba:
    def test_empty_model_returns_prevalence(self):
        vectors = separable_vectors(64)
        prevalence = sum(v.label for v in vectors) / len(vectors)
        model = train(vectors, DetectorConfig(num_trees=0))
        x = vectors[0].features
        assert model.predict_proba(x) == pytest.approx(prevalence)

    def test_training_points_on_correct_side(self):
        vectors = separable_vectors(150)
        model = train(
            vectors, DetectorConfig(subsample=1.0, colsample_per_tree=1.0, num_trees=80)
        )
        hits = sum(
            (model.predict_proba(v.features) > 0.5) == bool(v.label) for v in vectors
        )
        assert hits / len(vectors) > 0.95

    def test_deterministic(self):
        vectors = separable_vectors(50)
        model = train(vectors, DetectorConfig(num_trees=10))
        x = vectors[0].features
        assert model.predict_proba(x) == model.predict_proba(x)

    def test_output_strictly_inside_unit_interval(self):
        vectors = separable_vectors(50)
        model = train(vectors, DetectorConfig(num_trees=10))
        for v in vectors:
            assert 0.0 < model.predict_proba(v.features) < 1.0

    def test_wrong_dimension_rejected(self):
        vectors = separable_vectors(50)
        model = train(vectors, DetectorConfig(num_trees=2))
        with pytest.raises(DimensionError):
            model.predict_proba((0.0,) * 14)


class TestSigmoid:
    def test_extremes_stay_finite(self):
        assert sigmoid(-800.0) >= 0.0
        assert sigmoid(800.0) <= 1.0
        assert sigmoid(0.0) == 0.5

    def test_matches_reference(self):
        for m in (-3.7, -0.5, 0.0, 1.2, 9.0):
            assert sigmoid(m) == pytest.approx(1.0 / (1.0 + math.exp(-m)))


def pairwise_auroc(scores, labels):
    """All-pairs comparison oracle; ties count one half."""
    positives = [s for s, l in zip(scores, labels) if l == 1]
    negatives = [s for s, l in zip(scores, labels) if l == 0]
    total = 0.0
    for p in positives:
        for n in negatives:
            if p > n:
                total += 1.0
            elif p == n:
                total += 0.5
    return total / (len(positives) * len(negatives))


class TestAuroc:
    def test_perfect_ranking(self):
        assert auroc([0.9, 0.1], [1, 0]) == 1.0

    def test_all_equal_scores(self):
        assert auroc([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0]) == 0.5

    def test_hand_example(self):
        assert auroc([0.8, 0.6, 0.4, 0.2], [1, 0, 1, 0]) == 0.75

    def test_single_class_rejected(self):
        with pytest.raises(SingleClassError):
            auroc([0.1, 0.2], [1, 1])

    def test_matches_pairwise_oracle(self):
        rng = SplitMix64(606)
        for _ in range(200):
            n = 2 + rng.randrange(30)
            # quantized scores force plenty of ties
            scores = [rng.randrange(7) / 6 for _ in range(n)]
            labels = [rng.randrange(2) for _ in range(n)]
            if len(set(labels)) < 2:
                labels[0] = 1 - labels[0]
            assert auroc(scores, labels) == pytest.approx(
                pairwise_auroc(scores, labels), abs=1e-12
            )

    def test_invariant_under_monotone_transform(self):
        rng = SplitMix64(607)
        scores = [rng.random() for _ in range(40)]
        labels = [rng.randrange(2) for _ in range(40)]
        labels[0], labels[1] = 0, 1
        transformed = [math.exp(3 * s) - 2 for s in scores]
        assert auroc(scores, labels) == pytest.approx(auroc(transformed, labels))


class TestPersistence:
    def test_json_round_trip(self):
        vectors = separable_vectors(60)
        model = train(vectors, DetectorConfig(num_trees=12))
        clone = DetectorModel.from_json(model.to_json())
        assert clone == model
        x = vectors[0].features
        assert clone.predict_proba(x) == model.predict_proba(x)

    def test_tree_document_shape(self):
        import json

        model = DetectorModel(
            base_score=0.1,
            trees=(Split(feature=2, threshold=0.5, left=Leaf(-0.2), right=Leaf(0.3)),),
            config=DetectorConfig(),
            num_features=NUM_FEATURES,
        )
        doc = json.loads(model.to_json())
        assert set(doc) == {"config", "num_features", "base_score", "trees"}
        assert doc["trees"][0] == {
            "feature": 2,
            "threshold": 0.5,
            "left": {"value": -0.2},
            "right": {"value": 0.3},
        }

    def test_malformed_document_rejected(self):
        with pytest.raises(SchemaError):
            DetectorModel.from_json("{not json")
        with pytest.raises(SchemaError):
            DetectorModel.from_json("{}")
