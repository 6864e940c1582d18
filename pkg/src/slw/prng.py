"""Deterministic 64-bit PRNG used by every generator.

SplitMix64 (Steele, Lea, Flood 2014). Constants are part of the output
contract so streams are reproducible across languages:

    state += 0x9E3779B97F4A7C15          (golden-ratio increment)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

All arithmetic is mod 2**64. A fixed seed yields a bit-identical stream and
therefore bit-identical generator output.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Minimal deterministic RNG. Not for cryptography."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform in [0, n) by rejection, so the stream is unbiased."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        # Zone rejection: accept draws below the largest multiple of n.
        zone = _MASK - (_MASK + 1) % n
        while True:
            u = self.next_u64()
            if u <= zone:
                return u % n

    def randint(self, a: int, b: int) -> int:
        """Uniform in [a, b] inclusive."""
        return a + self.randrange(b - a + 1)

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        if k > len(pool):
            raise ValueError("sample larger than population")
        self.shuffle(pool)
        return pool[:k]

    def split(self) -> "SplitMix64":
        """Independent child stream (seeded from this stream)."""
        return SplitMix64(self.next_u64())
