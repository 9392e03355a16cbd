"""Portable seeded sampling.

All sampling goes through :class:`SplitMix64` (Steele, Lea & Flood), whose
64-bit state and constants are fixed below, so a seed reproduces the same
instances in any language.

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)          (all arithmetic mod 2**64)

Integers in ``[lo, hi]`` are drawn by rejection sampling on the top of the
64-bit range, so they are exactly uniform.
"""

from __future__ import annotations

from fractions import Fraction

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def rational(self, bound: int = 20, max_den: int = 100) -> Fraction:
        return Fraction(self.randint(-bound * max_den, bound * max_den), self.randint(1, max_den))

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        out = []
        for _ in range(k):
            out.append(pool.pop(self.randint(0, len(pool) - 1)))
        return out

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.randint(0, i)
            seq[i], seq[j] = seq[j], seq[i]


def random_vector(rng: SplitMix64, dim: int, bound: int = 20, max_den: int = 1) -> tuple:
    if max_den == 1:
        return tuple(rng.randint(-bound, bound) for _ in range(dim))
    return tuple(rng.rational(bound, max_den) for _ in range(dim))
