"""Seedable, portable PRNG (splitmix64).

Chosen over `random.Random` so that assignment generation is reproducible
across implementations of this system, not just across Python versions.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def mix(seed: int, salt: int) -> int:
    """Derive an independent stream seed; used for per-trial seeds."""
    return (seed ^ (salt * 0x9E3779B97F4A7C15)) & _MASK


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n); n >= 1."""
        # rejection sampling keeps the distribution exactly uniform
        limit = _MASK - (_MASK + 1) % n
        while True:
            v = self.next_u64()
            if v <= limit:
                return v % n

    def int_range(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)

    def float01(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def float_range(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.float01()

    def bernoulli(self, p: float) -> bool:
        return self.float01() < p

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
