"""Integer arithmetic: modular powers, sieving, exact and probabilistic primality."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _pykernels
from ._backend import kernels
from .errors import DomainError, ResourceError
from .sampling import RandomStream, derive

__all__ = [
    "SIEVE_CAP",
    "EXACT_CAP",
    "PrimalityConfig",
    "Verdict",
    "mod_pow",
    "gcd",
    "sieve_primes",
    "prime_flags",
    "odd_prime_flags",
    "is_prime_exact",
    "is_probable_prime",
]

SIEVE_CAP = 2**32
EXACT_CAP = 2**64

_WORD = 2**64
_TD_PRIMES_LIMIT = 2**16


@dataclass(frozen=True)
class PrimalityConfig:
    rounds: int = 64

    def __post_init__(self):
        if not isinstance(self.rounds, int) or self.rounds < 1:
            raise DomainError(f"rounds must be a positive integer, got {self.rounds!r}")

    @property
    def error_bound(self) -> Fraction:
        return Fraction(1, 4**self.rounds)


DEFAULT_CONFIG = PrimalityConfig()


@dataclass(frozen=True)
class Verdict:
    is_prime: bool
    method: str  # "exact" or "miller_rabin"
    error_bound: Fraction

    def __bool__(self):
        return self.is_prime


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise DomainError("negative exponent")
    return pow(base, exp, modulus)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def _odd_sieve(limit: int) -> np.ndarray:
    """Flags for odd numbers: entry ``i`` says whether ``2 * i + 1`` is prime."""
    size = (limit + 1) // 2
    flags = np.ones(size, dtype=bool)
    if size:
        flags[0] = False  # 1
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            flags[p * p // 2 :: p] = False
    return flags


def _check_cap(limit: int, cap: int):
    if limit > cap:
        raise ResourceError(f"sieve limit {limit} exceeds cap {cap}")


def sieve_primes(limit: int, cap: int = SIEVE_CAP) -> np.ndarray:
    """All primes ``<= limit`` in ascending order, as an ``int64`` array."""
    _check_cap(limit, cap)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    odd = np.flatnonzero(_odd_sieve(limit)).astype(np.int64) * 2 + 1
    return np.concatenate(([2], odd)).astype(np.int64)


def prime_flags(limit: int, cap: int = SIEVE_CAP) -> np.ndarray:
    """Boolean array of length ``limit + 1``; ``flags[n]`` iff ``n`` is prime."""
    _check_cap(limit, cap)
    flags = np.zeros(limit + 1, dtype=bool)
    if limit >= 2:
        flags[2] = True
        flags[1::2] = _odd_sieve(limit)
    return flags


def odd_prime_flags(limit: int, cap: int = SIEVE_CAP) -> np.ndarray:
    """Half-size flags: entry ``i`` says whether ``2 * i + 1`` is prime (``2 * i + 1 <= limit``)."""
    _check_cap(limit, cap)
    return _odd_sieve(limit)


@lru_cache(maxsize=1)
def _td_primes() -> list:
    return sieve_primes(_TD_PRIMES_LIMIT).tolist()


def is_prime_exact(n: int) -> bool:
    """Deterministic primality by trial division up to ``isqrt(n)``; ``n <= 2**64``."""
    if n < 0 or n > EXACT_CAP:
        raise DomainError(f"is_prime_exact needs 0 <= n <= 2**64, got {n}")
    if n == EXACT_CAP:
        return False
    return bool(kernels.trial_division(n, _td_primes()))


def is_probable_prime(
    n: int,
    cfg: PrimalityConfig = DEFAULT_CONFIG,
    rng: RandomStream | None = None,
) -> Verdict:
    """Miller-Rabin with ``cfg.rounds`` uniformly random witnesses in ``[2, n - 2]``.

    Odd candidates are first trial-divided by the odd primes below 1024;
    a hit there is reported as an exact composite. Without ``rng`` the
    witnesses come from a stream seeded by ``derive(0, n)``, so the verdict
    is still reproducible.
    """
    if n < 0:
        raise DomainError("negative input")
    if rng is None:
        rng = RandomStream(derive(0, n))
    impl = kernels if n < _WORD else _pykernels
    code = impl.probable_prime(n, cfg.rounds, rng.state)
    if code == _pykernels.COMPOSITE_EXACT:
        return Verdict(False, "exact", Fraction(0))
    if code == _pykernels.PRIME_EXACT:
        return Verdict(True, "exact", Fraction(0))
    return Verdict(code == _pykernels.PROBABLE_PRIME, "miller_rabin", cfg.error_bound)
