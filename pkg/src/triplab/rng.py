"""Deterministic 64-bit PRNG used by the synthetic data generator.

The stream is xoshiro256** (Blackman & Vigna, 2018), seeded by expanding a
single 64-bit seed through splitmix64. Both algorithms are pinned by this
module rather than borrowed from a library, so a given seed produces the
same draw sequence on every platform and Python version.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256(object):
    """xoshiro256** with helpers for uniforms, normals and index sampling."""

    def __init__(self, seed: int):
        state = seed & _MASK64
        words = []
        for _ in range(4):
            state, word = _splitmix64(state)
            words.append(word)
        self._s = words
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def random(self) -> float:
        # 53-bit mantissa in [0, 1); exact in IEEE 754 binary64.
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow requires n > 0")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def normal(self, mean: float, std: float) -> float:
        """Gaussian draw via the Box-Muller transform; the spare is cached."""
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
        else:
            # u1 in (0, 1] so the log is finite.
            u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
            u2 = self.random()
            r = math.sqrt(-2.0 * math.log(u1))
            theta = 2.0 * math.pi * u2
            z = r * math.cos(theta)
            self._spare_normal = r * math.sin(theta)
        return mean + std * z

    def sample_indices(self, population: int, k: int) -> list[int]:
        """k distinct indices from range(population), by partial Fisher-Yates."""
        if k < 0 or k > population:
            raise ValueError(f"cannot sample {k} from {population}")
        swapped: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.randbelow(population - i)
            vi = swapped.get(i, i)
            vj = swapped.get(j, j)
            swapped[i], swapped[j] = vj, vi
            out.append(vj)
        return out
