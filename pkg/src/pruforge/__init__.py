"""Random ``(p, q, omega)`` triples with ``p | q - 1`` and ``omega`` of order ``p`` mod ``q``."""

from ._backend import BACKEND
from .density import (
    DensityRecord,
    SweepRow,
    exact_proportion,
    rs62_check,
    run_bitsize_sweep,
    sampled_proportion,
    theory_proportion,
)
from .errors import DomainError, ParameterError, PruforgeError, ResourceError
from .numtheory import (
    PrimalityConfig,
    Verdict,
    gcd,
    is_prime_exact,
    is_probable_prime,
    mod_pow,
    sieve_primes,
)
from .prugen import (
    Budgets,
    GenOutcome,
    PruTriple,
    derive_budgets,
    generate,
    min_lambda,
    min_lambda_for_coprime,
    verify_triple,
)
from .sampling import RandomStream, derive, uniform_even, uniform_nat, uniform_odd

__version__ = "0.1.0"
