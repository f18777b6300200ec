"""Portable deterministic random number generation.

Experiments must be replayable bit-for-bit from a 64-bit master seed, on any
platform and from any implementation language, so we use SplitMix64 instead
of a platform RNG. The full state transition, so it can be re-implemented
elsewhere:

    state'  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z       = state'
    z       = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z       = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output  = z XOR (z >> 31)

Uniform doubles take the top 53 bits of an output: u = (output >> 11) * 2^-53,
giving u in [0, 1). Draws of exactly 0 are rejected and redrawn (probability
2^-53 each), so `uniform()` returns values in (0, 1).

Independent sub-streams for parallel work are derived by an O(1) rule:

    substream_seed(master, i) = mix64((master + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64)

which equals the (i+1)-th raw output of a SplitMix64 seeded with `master`,
so sub-stream seeds never collide with each other for i < 2^64.
"""

from __future__ import annotations

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

_U53 = 2.0 ** -53


def mix64(z: int) -> int:
    """The SplitMix64 output scrambler (finalizer) on a 64-bit word."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31)


def substream_seed(master_seed: int, index: int) -> int:
    """Seed for the `index`-th independent sub-stream of `master_seed`."""
    if index < 0:
        raise ValueError("substream index must be >= 0")
    return mix64((master_seed + (index + 1) * _GOLDEN) & _MASK64)


class SplitMix64:
    """SplitMix64 stream of 64-bit words and uniform doubles in (0, 1)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_raw(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def uniform(self) -> float:
        # Rejects the measure-zero draw u == 0 so that log(u) is always finite.
        while True:
            bits = self.next_raw() >> 11
            if bits:
                return bits * _U53


def substream(master_seed: int, index: int) -> SplitMix64:
    """Generator for the `index`-th independent sub-stream of `master_seed`."""
    return SplitMix64(substream_seed(master_seed, index))
