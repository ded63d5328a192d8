"""Monte Carlo generation of ``(p, q, omega)`` triples.

``p`` is a uniform random prime in ``(lam, 2 lam)``, ``q = a p + 1 <= lam**6``
is prime, and ``omega`` has multiplicative order exactly ``p`` modulo ``q``.
Each of the three sampling steps has a fixed draw budget; exhausting one
yields a FAIL outcome tagged with the stage, never an exception.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError, ParameterError
from .numtheory import DEFAULT_CONFIG, PrimalityConfig, is_probable_prime
from .sampling import RandomStream, uniform_even, uniform_nat, uniform_odd

__all__ = [
    "NO_P",
    "NO_Q",
    "NO_OMEGA",
    "Budgets",
    "PruTriple",
    "GenOutcome",
    "as_fraction",
    "min_lambda",
    "min_lambda_for_coprime",
    "derive_budgets",
    "generate",
    "verify_triple",
]

NO_P = "no_p"
NO_Q = "no_q"
NO_OMEGA = "no_omega"

_LN_PREC = 60
_SLACK = Decimal("1e-30")


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float.

    Floats go through their shortest repr, so ``0.3`` means ``3/10``.
    """
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise DomainError(f"not a rational number: {x!r}") from None


def _dec(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def _ceil_upward(v: Decimal) -> int:
    # v carries ~60 significant digits; pad before the ceiling so rounding
    # in the logarithms can only over-allocate.
    return math.ceil(v + _SLACK)


def _ceil_root(x: Fraction, k: int) -> int:
    """Smallest integer ``m >= 0`` with ``m**k >= x``."""
    target = math.ceil(x)
    if target <= 0:
        return 0
    m = 1 << -(-target.bit_length() // k)  # m**k >= target
    while True:
        nxt = ((k - 1) * m + target // m ** (k - 1)) // k
        if nxt >= m:
            break
        m = nxt
    while m**k < target:
        m += 1
    while m > 0 and (m - 1) ** k >= target:
        m -= 1
    return m


def min_lambda(epsilon) -> int:
    """Smallest integer ``lam >= 2**58 / epsilon**2``.

    Accepts ``0 < epsilon <= 1/2``.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps <= Fraction(1, 2):
        raise DomainError(f"epsilon must lie in (0, 1/2], got {eps}")
    return math.ceil(Fraction(2**58) / eps**2)


def min_lambda_for_coprime(mu, ln_k) -> int:
    """Smallest integer ``lam >= max(2**56 / mu**2, (48 ln_k / mu) ** (1/5))``."""
    mu = as_fraction(mu)
    ln_k = as_fraction(ln_k)
    if not 0 < mu < 1:
        raise DomainError(f"mu must lie in (0, 1), got {mu}")
    if ln_k <= 0:
        raise DomainError(f"ln K must be positive, got {ln_k}")
    first = math.ceil(Fraction(2**56) / mu**2)
    second = _ceil_root(48 * ln_k / mu, 5)
    return max(first, second)


@dataclass(frozen=True)
class Budgets:
    lam: int
    epsilon: Fraction
    k_p: int
    k_a: int

    def k_zeta(self, p: int) -> int:
        """Draw budget for the root-of-unity step once ``p`` is known."""
        with localcontext() as ctx:
            ctx.prec = _LN_PREC
            v = _dec(4 / self.epsilon).ln() / Decimal(p).ln()
        return max(1, _ceil_upward(v))

    def a_hi(self, p: int) -> int:
        """Largest multiplier allowed in the ``q`` step; keeps ``q <= lam**6``."""
        return min(self.lam**5, (self.lam**6 - 1) // p)


def derive_budgets(lam: int, epsilon) -> Budgets:
    eps = as_fraction(epsilon)
    if lam < 4:
        raise DomainError(f"lambda must be >= 4, got {lam}")
    if not 0 < eps < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {eps}")
    with localcontext() as ctx:
        ctx.prec = _LN_PREC
        base = _dec(4 / eps).ln() * Decimal(lam).ln()
        k_p = _ceil_upward(base * 5 / 6)
        k_a = _ceil_upward(base * 12)
    return Budgets(lam, eps, max(1, k_p), max(1, k_a))


def _format_rational(x: Fraction) -> str:
    """Finite decimal if one exists, else ``num/den``."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10**digits
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    sign = "-" if x < 0 else ""
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


@dataclass(frozen=True)
class PruTriple:
    p: int
    q: int
    omega: int
    lam: int
    rigorous: bool = False
    epsilon: Fraction | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "p": str(self.p),
            "q": str(self.q),
            "omega": str(self.omega),
            "lambda": str(self.lam),
            "epsilon": None if self.epsilon is None else _format_rational(self.epsilon),
            "rigorous": self.rigorous,
            "seed": None if self.seed is None else str(self.seed),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "PruTriple":
        try:
            return cls(
                p=int(d["p"]),
                q=int(d["q"]),
                omega=int(d["omega"]),
                lam=int(d["lambda"]),
                rigorous=bool(d.get("rigorous", False)),
                epsilon=None if d.get("epsilon") is None else as_fraction(d["epsilon"]),
                seed=None if d.get("seed") is None else int(d["seed"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed triple: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "PruTriple":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DomainError(f"malformed triple JSON: {exc}") from None


@dataclass
class GenOutcome:
    """Result of :func:`generate`: a triple, or the stage whose budget ran out.

    ``draws`` counts the samples each step consumed, for budget audits.
    """

    budgets: Budgets
    triple: PruTriple | None = None
    stage: str | None = None
    draws: dict = field(default_factory=lambda: {"p": 0, "a": 0, "zeta": 0})
    k_zeta: int | None = None

    @property
    def ok(self) -> bool:
        return self.triple is not None


def generate(
    lam: int,
    epsilon,
    rng: RandomStream,
    allow_practical: bool = False,
    cfg: PrimalityConfig = DEFAULT_CONFIG,
) -> GenOutcome:
    """Run the three sampling steps.

    Below ``min_lambda(epsilon)`` the success guarantee is only empirical,
    so that regime needs ``allow_practical=True`` and the triple records
    ``rigorous=False``.
    """
    eps = as_fraction(epsilon)
    budgets = derive_budgets(lam, eps)
    rigorous = eps <= Fraction(1, 2) and lam >= min_lambda(eps)
    if not rigorous and not allow_practical:
        raise ParameterError(
            f"lambda={lam} is below the rigorous threshold for epsilon={eps}; "
            "pass allow_practical to run anyway"
        )
    out = GenOutcome(budgets)

    p = None
    for _ in range(budgets.k_p):
        out.draws["p"] += 1
        cand = uniform_odd(rng, lam + 1, 2 * lam - 1)
        if is_probable_prime(cand, cfg, rng):
            p = cand
            break
    if p is None:
        out.stage = NO_P
        return out

    q = None
    a_hi = budgets.a_hi(p)
    for _ in range(budgets.k_a):
        out.draws["a"] += 1
        cand = uniform_even(rng, 2, a_hi) * p + 1
        if is_probable_prime(cand, cfg, rng):
            q = cand
            break
    if q is None:
        out.stage = NO_Q
        return out

    out.k_zeta = budgets.k_zeta(p)
    cofactor = (q - 1) // p
    for _ in range(out.k_zeta):
        out.draws["zeta"] += 1
        zeta = uniform_nat(rng, 1, q - 1)
        omega = pow(zeta, cofactor, q)
        if omega != 1:
            out.triple = PruTriple(p, q, omega, lam, rigorous, eps, rng.seed)
            return out
    out.stage = NO_OMEGA
    return out


def verify_triple(
    t: PruTriple,
    cfg: PrimalityConfig = DEFAULT_CONFIG,
    rng: RandomStream | None = None,
) -> bool:
    """Check the triple's defining properties; malformed input gives ``False``."""
    try:
        p, q, omega, lam = int(t.p), int(t.q), int(t.omega), int(t.lam)
    except (TypeError, ValueError, AttributeError):
        return False
    if not lam < p < 2 * lam:
        return False
    if q > lam**6 or q < 3:
        return False
    if (q - 1) % p != 0:
        return False
    if not 1 < omega < q:
        return False
    if pow(omega, p, q) != 1:
        return False
    return bool(is_probable_prime(p, cfg, rng)) and bool(is_probable_prime(q, cfg, rng))
