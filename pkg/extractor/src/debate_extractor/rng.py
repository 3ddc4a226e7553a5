"""SplitMix64: the deterministic generator behind seeded answer sampling.

Same published algorithm (Steele, Lea & Flood, OOPSLA 2014) the consumer
side uses, so conversions are reproducible bit for bit everywhere.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError(f"randrange bound must be positive, got {n}")
        span = _MASK64 + 1
        limit = span - span % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n
