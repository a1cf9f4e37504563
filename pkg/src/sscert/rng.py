"""Deterministic counter-based random number generation.

Every randomized operation in the package draws from SplitMix64, a
64-bit counter-based generator (Steele, Lea, Flood 2014), so that any
implementation of the same scheme reproduces the streams bit for bit:

* state update:  ``s_{i+1} = (s_i + 0x9E3779B97F4A7C15) mod 2^64``
* output:        ``mix64(s_{i+1})`` where ``mix64`` is the SplitMix64
  finalizer (xor-shift 30, mul 0xBF58476D1CE4E5B9, xor-shift 27, mul
  0x94D049BB133111EB, xor-shift 31).

Stream splitting: substream ``i`` of a stream seeded with ``s`` is
seeded with ``mix64(s XOR mix64((i + 1) * 0x9E3779B97F4A7C15))``.
Instance generation uses substream ``t`` of the user seed for resample
attempt ``t``; right-hand-side sampling uses the root stream directly.

Big integers are produced from consecutive 64-bit words, least
significant word first, masked down to the requested bit count.
Bounded draws use rejection sampling on the bit length of the range.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit word."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def substream_seed(seed: int, index: int) -> int:
    """Seed of substream ``index`` of a stream seeded with ``seed``."""
    if index < 0:
        raise ValueError("substream index must be nonnegative")
    return mix64((seed & _MASK64) ^ mix64(((index + 1) * _GAMMA) & _MASK64))


class SplitMix64:
    """SplitMix64 stream; all draws are pure functions of the seed."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def randbits(self, k: int) -> int:
        """Uniform integer in [0, 2^k), from ceil(k/64) words."""
        if k < 0:
            raise ValueError("bit count must be nonnegative")
        acc = 0
        for word in range((k + 63) // 64):
            acc |= self.next_u64() << (64 * word)
        return acc & ((1 << k) - 1)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], rejection sampling on bit length."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo
        if span == 0:
            return lo
        bits = span.bit_length()
        while True:
            draw = self.randbits(bits)
            if draw <= span:
                return lo + draw
