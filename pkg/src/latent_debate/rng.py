"""Deterministic pseudo-random generation for every stochastic choice in the package.

The generator is SplitMix64 (Steele, Lea & Flood, OOPSLA 2014): a 64-bit
counter advanced by the golden-gamma constant, finalized with a two-round
multiply-xorshift mixer.  It is tiny, has a published reference
implementation, and emits the same stream on every platform and Python
version, so random verdicts, dataset splits, subsampling and background
sampling are reproducible bit for bit.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """A SplitMix64 stream seeded with an arbitrary integer."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        """Next raw 64-bit output word."""
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Float in [0, 1) built from the top 53 bits of one output word."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, low: float, high: float) -> float:
        """Float in [low, high)."""
        return low + (high - low) * self.random()

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), bias-free via rejection sampling."""
        if n <= 0:
            raise ValueError(f"randrange bound must be positive, got {n}")
        span = _MASK64 + 1
        limit = span - span % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_sorted(self, population: int, k: int) -> list[int]:
        """k distinct indices from range(population), returned ascending.

        Ascending order keeps downstream float summations independent of the
        seed whenever k == population (a full sample).
        """
        if not 0 <= k <= population:
            raise ValueError(f"cannot sample {k} of {population}")
        idx = list(range(population))
        for i in range(k):
            j = i + self.randrange(population - i)
            idx[i], idx[j] = idx[j], idx[i]
        return sorted(idx[:k])
