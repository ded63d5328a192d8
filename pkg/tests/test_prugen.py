import json
import math
from fractions import Fraction

import mpmath
import pytest

from pruforge.errors import DomainError, ParameterError
from pruforge.numtheory import is_prime_exact
from pruforge.prugen import (
    NO_OMEGA,
    NO_P,
    NO_Q,
    Budgets,
    PruTriple,
    as_fraction,
    derive_budgets,
    generate,
    min_lambda,
    min_lambda_for_coprime,
    verify_triple,
)
from pruforge.sampling import RandomStream, derive


def test_as_fraction():
    assert as_fraction(0.3) == Fraction(3, 10)
    assert as_fraction("1/4") == Fraction(1, 4)
    assert as_fraction("0.5") == Fraction(1, 2)
    with pytest.raises(DomainError):
        as_fraction("abc")
    with pytest.raises(DomainError):
        as_fraction(float("nan"))


def test_min_lambda():
    assert min_lambda(Fraction(1, 2)) == 2**60
    assert min_lambda(0.25) == 2**62
    assert min_lambda(0.3) == -(-(2**58) * 100 // 9)
    for bad in (0, -0.1, 0.6, 1):
        with pytest.raises(DomainError):
            min_lambda(bad)


def test_min_lambda_for_coprime():
    assert min_lambda_for_coprime(Fraction(1, 2), 10**12) == 2**58
    assert min_lambda_for_coprime(Fraction(999, 1000), 1) == math.ceil(
        Fraction(2**56) / Fraction(999, 1000) ** 2
    )
    with pytest.raises(DomainError):
        min_lambda_for_coprime(1, 5)
    with pytest.raises(DomainError):
        min_lambda_for_coprime(0.5, 0)


def test_min_lambda_for_coprime_root_term():
    # Huge ln K makes the fifth-root term dominate: smallest m with m**5 >= 96 ln K.
    ln_k = 10**120
    m = min_lambda_for_coprime(Fraction(1, 2), ln_k)
    assert m**5 >= 96 * ln_k > (m - 1) ** 5
    assert m > 2**58


@pytest.mark.parametrize("mus", [[0.1, 0.2, 0.5, 0.9]])
def test_min_lambda_for_coprime_monotone(mus):
    for ln_k in (1, 10**90, 10**100):
        vals = [min_lambda_for_coprime(mu, ln_k) for mu in mus]
        assert vals == sorted(vals, reverse=True)
    for mu in mus:
        vals = [min_lambda_for_coprime(mu, ln_k) for ln_k in (1, 10**90, 10**100, 10**110)]
        assert vals == sorted(vals)


def _budget_oracle(lam, eps):
    with mpmath.workdps(80):
        base = mpmath.log(4 / mpmath.mpf(eps)) * mpmath.log(lam)
        return int(mpmath.ceil(base * 5 / 6)), int(mpmath.ceil(base * 12))


def test_budgets_rigorous_example():
    b = derive_budgets(2**60, Fraction(1, 2))
    assert (b.k_p, b.k_a) == (73, 1038)
    assert (b.k_p, b.k_a) == _budget_oracle(2**60, 0.5)
    assert b.k_zeta(2**60 + 1) == 1


@pytest.mark.parametrize(
    "lam,eps",
    [(4, "0.99"), (2**10, "1/4"), (2**20, "1/4"), (10**9 + 7, "0.01"), (2**300, "1/1000")],
)
def test_budgets_match_high_precision(lam, eps):
    b = derive_budgets(lam, eps)
    e = Fraction(eps)
    assert (b.k_p, b.k_a) == _budget_oracle(lam, e.numerator / e.denominator)
    assert b.k_p >= 1 and b.k_a >= 1


def test_k_zeta():
    b = derive_budgets(2**10, Fraction(1, 4))
    # ln 16 / ln 1031 = 0.399 -> 1
    assert b.k_zeta(1031) == 1
    b = derive_budgets(16, Fraction(1, 10**12))
    with mpmath.workdps(50):
        expect = int(mpmath.ceil(mpmath.log(4 * 10**12) / mpmath.log(17)))
    assert b.k_zeta(17) == expect


def test_a_hi_keeps_q_below_lambda6():
    lam = 2**10
    b = derive_budgets(lam, 0.25)
    for p in (1031, 2039):
        a = b.a_hi(p)
        assert a <= lam**5
        assert a * p + 1 <= lam**6
        assert (a + 1) * p + 1 > lam**6 or a == lam**5


def test_budget_preconditions():
    with pytest.raises(DomainError):
        derive_budgets(3, 0.5)
    with pytest.raises(DomainError):
        derive_budgets(100, 1)


def test_verify_triple_examples():
    assert verify_triple(PruTriple(11, 23, 2, 10))
    assert not verify_triple(PruTriple(11, 23, 1, 10))
    assert not verify_triple(PruTriple(11, 24, 2, 10))
    assert not verify_triple(PruTriple(11, 23, 2, 5))  # p outside (lam, 2 lam)
    assert not verify_triple(PruTriple(11, 23, 2, 2))  # q > lam**6
    assert not verify_triple(PruTriple("x", 23, 2, 10))


def test_verify_triple_oracle():
    # Brute force: order of omega is exactly p.
    p, q, lam = 11, 23, 10
    for omega in range(2, q):
        order = next(k for k in range(1, q) if pow(omega, k, q) == 1)
        assert verify_triple(PruTriple(p, q, omega, lam)) == (order == p)


def test_generate_rejects_nonrigorous():
    with pytest.raises(ParameterError):
        generate(2**59, 0.5, RandomStream(1))
    with pytest.raises(ParameterError):
        generate(2**20, 0.25, RandomStream(1))
    with pytest.raises(DomainError):
        generate(3, 0.25, RandomStream(1), allow_practical=True)


def test_generate_rigorous():
    out = generate(2**60, Fraction(1, 2), RandomStream(2024))
    assert out.ok
    t = out.triple
    assert t.rigorous
    assert t.q <= 2**360 and t.q % t.p == 1
    assert verify_triple(t)


def _check_outcome(out, lam):
    b = out.budgets
    assert out.draws["p"] <= b.k_p
    assert out.draws["a"] <= b.k_a
    if out.k_zeta is not None:
        assert out.draws["zeta"] <= out.k_zeta
    if out.ok:
        t = out.triple
        assert verify_triple(t)
        assert not t.rigorous
        a = (t.q - 1) // t.p
        assert a % 2 == 0 and a * t.p + 1 == t.q
        assert t.q <= lam**6
    else:
        assert out.stage in (NO_P, NO_Q, NO_OMEGA)


@pytest.mark.parametrize("bits", [10, 14, 20])
def test_generate_practical_battery(bits):
    lam = 2**bits
    fails = 0
    for i in range(300):
        out = generate(lam, Fraction(1, 4), RandomStream(derive(bits, i)), allow_practical=True)
        _check_outcome(out, lam)
        fails += not out.ok
    assert fails / 300 <= 0.25


def test_generate_small_lambda_exact_primes():
    # q <= 2**36 keeps the trial-division oracle cheap.
    lam = 2**6
    for i in range(300):
        out = generate(lam, 0.25, RandomStream(i), allow_practical=True)
        if out.ok:
            assert is_prime_exact(out.triple.p)
            assert is_prime_exact(out.triple.q)


def test_generate_fail_stage_no_p():
    # lam = 24: (24, 48) has primes, but a tiny budget exhausts on some seeds.
    stages = set()
    for i in range(200):
        out = generate(24, Fraction(99, 100), RandomStream(i), allow_practical=True)
        _check_outcome(out, 24)
        stages.add(out.stage)
    assert NO_P in stages


def test_generate_deterministic():
    a = generate(2**20, 0.25, RandomStream(77), allow_practical=True)
    b = generate(2**20, 0.25, RandomStream(77), allow_practical=True)
    assert a.triple == b.triple and a.draws == b.draws


def test_p_uniform_over_primes():
    # (lam, 2 lam) with lam = 64 holds 13 primes; each should be hit ~1/13 of the time.
    lam = 64
    primes = [n for n in range(lam + 1, 2 * lam) if is_prime_exact(n)]
    counts = dict.fromkeys(primes, 0)
    n = 0
    for i in range(6500):
        out = generate(lam, 0.25, RandomStream(i), allow_practical=True)
        if out.stage != NO_P:
            counts[out.triple.p if out.ok else _first_p(i, lam)] += 1
            n += 1
    expected = n / len(primes)
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < 32.9  # 0.999 quantile, 12 dof


def _first_p(seed, lam):
    # Replays step 1 for outcomes that failed later.
    from pruforge.numtheory import is_probable_prime
    from pruforge.sampling import uniform_odd

    rng = RandomStream(seed)
    while True:
        c = uniform_odd(rng, lam + 1, 2 * lam - 1)
        if is_probable_prime(c, rng=rng):
            return c


def test_triple_json_roundtrip():
    out = generate(2**20, "1/4", RandomStream(5), allow_practical=True)
    t = out.triple
    d = json.loads(t.to_json())
    assert set(d) == {"p", "q", "omega", "lambda", "epsilon", "rigorous", "seed"}
    assert all(isinstance(d[k], str) for k in ("p", "q", "omega", "lambda", "epsilon", "seed"))
    assert d["epsilon"] == "0.25" and d["seed"] == "5"
    assert PruTriple.from_json(t.to_json()) == t
    with pytest.raises(DomainError):
        PruTriple.from_json("{}")


def test_budgets_type():
    b = derive_budgets(100, 0.5)
    assert isinstance(b, Budgets)
    assert b.epsilon == Fraction(1, 2)
