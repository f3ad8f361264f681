"""Exact randomness primitives.

All random decisions in the samplers are made here, and only here, with
integer arithmetic.  The base generator is SplitMix64: a 64-bit
counter-based mixer with a full 2^64 period, good equidistribution, and
a tiny pure-Python implementation.  It is not cryptographic, which is
fine; we need reproducibility and statistical quality, not secrecy.

Layered on top:

  * BitSource.getbits(n)     -- n raw bits, buffered from 64-bit words
  * BitSource.uniform_below(k) -- exact uniform integer in [0, k)
  * bernoulli(p, src)        -- exact coin for a Fraction probability
  * categorical(probs, src)  -- exact draw over Fraction weights whose
                                sum may be below one; the leftover mass
                                is reported as None ("residual")

Exactness matters: the samplers' correctness proofs are stated for the
true rationals, so acceptance tests can treat every coin as exact.  No
float ever enters a decision; floats are allowed only in reporting.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import InvalidDistribution, ProbabilityOutOfRange

MASK64 = (1 << 64) - 1

# SplitMix64 constants (Steele, Lea, Flood's mixer, as circulated by
# Vigna's reference C implementation).
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

Probability = Union[Fraction, int]


class BitSource:
    """Deterministic stream of random bits seeded by a 64-bit integer.

    Bits are consumed from the low end of each successive SplitMix64
    word, so a stream is fully determined by the seed and the sequence
    of request sizes.  The instance counts words and bits handed out;
    tests use the counters to pin down consumption exactly.
    """

    __slots__ = ("_state", "_buffer", "_buffered", "words_drawn", "bits_drawn")

    def __init__(self, seed: int):
        self._state = seed & MASK64
        self._buffer = 0
        self._buffered = 0
        self.words_drawn = 0
        self.bits_drawn = 0

    def next64(self) -> int:
        """Advance the underlying generator and return one 64-bit word."""
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        z = z ^ (z >> 31)
        self.words_drawn += 1
        return z

    def getbits(self, n: int) -> int:
        """Return an integer made of the next n bits (n >= 0)."""
        if n < 0:
            raise ValueError("bit count must be nonnegative")
        while self._buffered < n:
            self._buffer |= self.next64() << self._buffered
            self._buffered += 64
        out = self._buffer & ((1 << n) - 1)
        self._buffer >>= n
        self._buffered -= n
        self.bits_drawn += n
        return out

    def uniform_below(self, k: int) -> int:
        """Exact uniform integer in [0, k), by rejection on getbits.

        Uses the smallest width that covers k-1, redrawing on overshoot,
        so every value has probability exactly 1/k.
        """
        if k <= 0:
            raise ValueError("uniform_below needs k >= 1")
        if k == 1:
            return 0
        width = (k - 1).bit_length()
        while True:
            v = self.getbits(width)
            if v < k:
                return v


def _check_probability(p: Probability) -> Fraction:
    q = Fraction(p)
    if q < 0 or q > 1:
        raise ProbabilityOutOfRange(f"probability {p!r} outside [0, 1]")
    return q


def bernoulli(p: Probability, src: BitSource) -> bool:
    """Return True with probability exactly p (a Fraction or 0/1 int)."""
    q = _check_probability(p)
    if q == 1:
        return True
    if q == 0:
        return False
    return src.uniform_below(q.denominator) < q.numerator


def categorical(probs: Sequence[Probability], src: BitSource) -> Optional[int]:
    """Draw an index i with probability probs[i]; None for the residual.

    The weights must be nonnegative and sum to at most one.  A single
    uniform draw over the common denominator decides the outcome, so the
    residual event (sum short of one) costs no extra randomness.
    """
    fracs = [Fraction(p) for p in probs]
    total = Fraction(0)
    for f in fracs:
        if f < 0:
            raise InvalidDistribution(f"negative weight {f}")
        total += f
    if total > 1:
        raise InvalidDistribution(f"weights sum to {total} > 1")
    if not fracs:
        return None
    den = math.lcm(*(f.denominator for f in fracs))
    u = src.uniform_below(den)
    acc = 0
    for i, f in enumerate(fracs):
        acc += f.numerator * (den // f.denominator)
        if u < acc:
            return i
    return None
