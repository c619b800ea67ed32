"""Seeded pseudo-random generation for suites and the command line.

Uses SplitMix64 (Steele, Lea, Vigna), a tiny fixed-point generator, so a
seed produces the same mappings, bijections, and matrices on every
platform and Python version.  Bounded draws use plain modulo reduction;
the slight bias is irrelevant here, reproducibility is not.
"""

from __future__ import annotations

from .core import Alphabet, Mapping

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound


def random_mapping(alphabet: Alphabet, rng: SplitMix64) -> Mapping:
    size = alphabet.size
    return Mapping(alphabet, tuple(rng.below(size) for _ in range(size)))


def random_bijection(alphabet: Alphabet, rng: SplitMix64) -> Mapping:
    # Fisher-Yates with draws in a fixed order, so output is seed-determined
    size = alphabet.size
    images = list(range(size))
    for i in range(size - 1, 0, -1):
        j = rng.below(i + 1)
        images[i], images[j] = images[j], images[i]
    return Mapping(alphabet, tuple(images))
