"""Proportion of primes in ``{2kp + 1 : 1 <= k <= p // 2}``, per prime and per bitsize.

A prime ``p`` has bitsize ``b`` when ``2**(b-1) < p < 2**b``. Small bitsizes
are measured exactly against a sieve; larger ones by sampling ``k`` with
replacement and testing ``2kp + 1`` with Miller-Rabin.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import _pykernels
from ._backend import kernels
from .errors import DomainError, ResourceError
from .numtheory import (
    DEFAULT_CONFIG,
    SIEVE_CAP,
    PrimalityConfig,
    is_prime_exact,
    odd_prime_flags,
    sieve_primes,
)
from .sampling import RandomStream, derive

__all__ = [
    "MIN_SAMPLES",
    "DensityRecord",
    "SweepRow",
    "SweepResult",
    "RS62Result",
    "exact_proportion",
    "sampled_proportion",
    "theory_proportion",
    "primes_of_bitsize",
    "run_bitsize_sweep",
    "rs62_check",
    "format_fixed",
]

MIN_SAMPLES = 1000
EXACT = "exact"
SAMPLED = "sampled"


@dataclass(frozen=True)
class DensityRecord:
    p: int
    bitsize: int
    candidates: int
    hits: int
    method: str
    seed: int | None = None

    @property
    def proportion(self) -> Fraction:
        return Fraction(self.hits, self.candidates)


@dataclass(frozen=True)
class SweepRow:
    bitsize: int
    n_primes: int
    min: Fraction
    avg: Fraction
    max: Fraction
    theory: float


@dataclass
class SweepResult:
    rows: list
    records: list


class RS62Result(NamedTuple):
    count: int
    bound: float
    ok: bool


class _FlagCache:
    """Odd-only sieve grown on demand to the next power of two."""

    def __init__(self):
        self.limit = 0
        self.flags = np.zeros(0, dtype=bool)

    def get(self, limit: int, cap: int) -> np.ndarray:
        if limit > cap:
            raise ResourceError(f"exact density needs a sieve to {limit}, cap is {cap}")
        if limit > self.limit:
            new_limit = min(max(1 << (limit - 1).bit_length(), 1 << 16), cap)
            self.flags = odd_prime_flags(new_limit, cap)
            self.limit = new_limit
        return self.flags


_flags = _FlagCache()


def _bitsize(p: int) -> int:
    # 2**(b-1) < p < 2**b; powers of two belong to no bitsize but are never prime > 2.
    return p.bit_length()


def exact_proportion(p: int, cap: int = SIEVE_CAP) -> DensityRecord:
    """Count primes ``2kp + 1`` over every ``k`` in ``[1, p // 2]``."""
    if not is_prime_exact(p):
        raise DomainError(f"{p} is not prime")
    m = p // 2
    flags = _flags.get(2 * m * p + 1, cap)
    # The odd number 2kp + 1 sits at index kp of the half-size sieve.
    hits = int(flags[np.arange(1, m + 1, dtype=np.int64) * p].sum())
    return DensityRecord(p, _bitsize(p), m, hits, EXACT)


def sampled_proportion(
    p: int,
    n_samples: int,
    rng: RandomStream,
    cfg: PrimalityConfig = DEFAULT_CONFIG,
) -> DensityRecord:
    """Estimate the proportion from ``n_samples`` uniform draws of ``k`` (with replacement)."""
    if n_samples < MIN_SAMPLES:
        raise DomainError(f"n_samples must be >= {MIN_SAMPLES}, got {n_samples}")
    if p < 2 or (p <= 2**64 and not is_prime_exact(p)):
        raise DomainError(f"{p} is not prime")
    impl = kernels if 2 * (p // 2) * p + 1 < 2**64 else _pykernels
    hits = impl.sampled_hits(p, n_samples, cfg.rounds, rng.state)
    return DensityRecord(p, _bitsize(p), n_samples, hits, SAMPLED, rng.seed)


def theory_proportion(bitsize: int) -> float:
    """Heuristic density ``1 / ln(2**(bitsize - 1))``."""
    if bitsize < 2:
        raise DomainError(f"bitsize must be >= 2, got {bitsize}")
    return 1.0 / ((bitsize - 1) * math.log(2))


def primes_of_bitsize(bitsize: int) -> list:
    lo = 1 << (bitsize - 1)
    primes = sieve_primes((1 << bitsize) - 1)
    return primes[primes > lo].tolist()


def _measure(task) -> list:
    primes, exact, n_samples, seed, rounds = task
    if exact:
        return [exact_proportion(p) for p in primes]
    cfg = PrimalityConfig(rounds)
    return [
        sampled_proportion(p, n_samples, RandomStream(derive(seed, p)), cfg)
        for p in primes
    ]


def _chunks(seq, n):
    size = max(1, -(-len(seq) // n))
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def aggregate(bitsize: int, records: list) -> SweepRow:
    props = [r.proportion for r in records]
    return SweepRow(
        bitsize=bitsize,
        n_primes=len(records),
        min=min(props),
        avg=sum(props, Fraction(0)) / len(props),
        max=max(props),
        theory=theory_proportion(bitsize),
    )


def run_bitsize_sweep(
    bits_lo: int,
    bits_hi: int,
    seed: int,
    exact_max_bits: int = 14,
    n_samples: int = MIN_SAMPLES,
    jobs: int = 1,
    cfg: PrimalityConfig = DEFAULT_CONFIG,
) -> SweepResult:
    """Measure every prime of each bitsize in ``[bits_lo, bits_hi]``.

    Sampled primes draw from ``derive(seed, p)``, so the result does not
    depend on ``jobs``.
    """
    if not 2 <= bits_lo <= bits_hi:
        raise DomainError(f"need 2 <= bits_lo <= bits_hi, got {bits_lo}, {bits_hi}")
    if n_samples < MIN_SAMPLES:
        raise DomainError(f"n_samples must be >= {MIN_SAMPLES}, got {n_samples}")
    rows, records = [], []
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for b in range(bits_lo, bits_hi + 1):
            primes = primes_of_bitsize(b)
            if not primes:
                continue
            exact = b <= exact_max_bits
            tasks = [(c, exact, n_samples, seed, cfg.rounds) for c in _chunks(primes, jobs)]
            # Exact counts share one in-process sieve; only sampling fans out.
            if pool is None or exact:
                parts = map(_measure, tasks)
            else:
                parts = pool.map(_measure, tasks)
            recs = [r for part in parts for r in part]
            records.extend(recs)
            rows.append(aggregate(b, recs))
    finally:
        if pool is not None:
            pool.shutdown()
    return SweepResult(rows, records)


class _PrimeCount:
    def __init__(self):
        self.limit = -1
        self.pi = np.zeros(0, dtype=np.int64)

    def upto(self, n: int, cap: int) -> int:
        if n > self.limit:
            limit = min(max(1 << n.bit_length(), 1 << 16), cap)
            if n > limit:
                raise ResourceError(f"prime count to {n} exceeds cap {cap}")
            flags = np.zeros(limit + 1, dtype=np.int64)
            flags[sieve_primes(limit, cap)] = 1
            self.pi = np.cumsum(flags)
            self.limit = limit
        return int(self.pi[n])


_pi = _PrimeCount()


def rs62_check(lam: int, cap: int = SIEVE_CAP) -> RS62Result:
    """Count primes in ``(lam, 2 lam)`` and compare with ``(3/5) lam / ln lam``."""
    if lam < 21:
        raise DomainError(f"lambda must be >= 21, got {lam}")
    count = _pi.upto(2 * lam - 1, cap) - _pi.upto(lam, cap)
    bound = 0.6 * lam / math.log(lam)
    return RS62Result(count, bound, count >= bound)


def format_fixed(x, digits: int) -> str:
    """Round half-up to ``digits`` fractional digits, exactly."""
    x = Fraction(repr(x)) if isinstance(x, float) else Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = math.floor(abs(x) * 10**digits + Fraction(1, 2))
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
