"""Seedable random streams and exact uniform integer sampling.

Generator: xoshiro256** (Blackman and Vigna), state seeded from a 64-bit
seed with four SplitMix64 outputs. Bounded draws use rejection on the
smallest covering power of two: for a span of ``b`` bits, ``ceil(b / 64)``
words are concatenated most-significant first, the low surplus bits are
dropped, and out-of-range values are redrawn.

Child seeds: ``derive(seed, label)`` is the first 8 bytes (little-endian)
of ``blake2b(seed.to_bytes(8, "little") + label_bytes, digest_size=8,
person=b"pruforge-derive")``, where ``label_bytes`` is the minimal
little-endian encoding of ``label`` (one zero byte for 0).

Both rules are part of the output format: changing either changes every
seeded result.
"""

from __future__ import annotations

import hashlib
import time

from ._pykernels import MASK64, next_u64, seed_state, uniform_below_eq
from .errors import DomainError

__all__ = [
    "RandomStream",
    "derive",
    "parse_seed",
    "default_seed",
    "uniform_nat",
    "uniform_odd",
    "uniform_even",
]


def _check_seed(seed: int) -> int:
    if not isinstance(seed, int) or not 0 <= seed <= MASK64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return seed


class RandomStream:
    """A single-owner xoshiro256** stream.

    Not safe to share between threads; fan out with :func:`derive` instead.
    """

    __slots__ = ("seed", "state")

    def __init__(self, seed: int):
        self.seed = _check_seed(seed)
        # Bulk kernels advance this list in place.
        self.state = seed_state(seed)

    def next_u64(self) -> int:
        return next_u64(self.state)

    def below_eq(self, span: int) -> int:
        """Uniform integer in ``[0, span]``."""
        return uniform_below_eq(self.state, span)

    def child(self, label: int) -> "RandomStream":
        return RandomStream(derive(self.seed, label))

    def __repr__(self):
        return f"RandomStream(seed={self.seed:#x})"


def derive(seed: int, label: int) -> int:
    """Child seed for ``label``; a pure function of ``(seed, label)``."""
    _check_seed(seed)
    if label < 0:
        raise DomainError("label must be non-negative")
    nbytes = max(1, (label.bit_length() + 7) // 8)
    h = hashlib.blake2b(digest_size=8, person=b"pruforge-derive")
    h.update(seed.to_bytes(8, "little"))
    h.update(label.to_bytes(nbytes, "little"))
    return int.from_bytes(h.digest(), "little")


def parse_seed(text: str) -> int:
    """Parse a decimal or ``0x``-prefixed hexadecimal seed."""
    t = text.strip().lower()
    try:
        value = int(t, 16) if t.startswith("0x") else int(t, 10)
    except ValueError:
        raise DomainError(f"malformed seed {text!r}") from None
    return _check_seed(value)


def default_seed() -> int:
    return time.time_ns() & MASK64


def uniform_nat(rng: RandomStream, lo: int, hi: int) -> int:
    """Uniform integer in ``[lo, hi]``, with no modulo bias."""
    if lo > hi:
        raise DomainError(f"empty range [{lo}, {hi}]")
    return lo + rng.below_eq(hi - lo)


def uniform_odd(rng: RandomStream, lo: int, hi: int) -> int:
    """Uniform over the odd integers of ``[lo, hi]``."""
    first = lo | 1
    last = hi if hi & 1 else hi - 1
    if first > last:
        raise DomainError(f"no odd integer in [{lo}, {hi}]")
    return first + 2 * rng.below_eq((last - first) >> 1)


def uniform_even(rng: RandomStream, lo: int, hi: int) -> int:
    """Uniform over the even integers of ``[max(lo, 2), hi]``."""
    if lo < 1:
        raise DomainError("uniform_even needs lo >= 1")
    first = max(lo + (lo & 1), 2)
    last = hi & ~1
    if first > last:
        raise DomainError(f"no even integer >= 2 in [{lo}, {hi}]")
    return first + 2 * rng.below_eq((last - first) >> 1)

