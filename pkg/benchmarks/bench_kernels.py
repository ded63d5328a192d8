"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends run the same workloads from the same generator state; the
script checks the outputs agree and reports wall time and speedup.
"""

import argparse
import time

from pruforge import _pykernels
from pruforge.density import primes_of_bitsize
from pruforge.numtheory import sieve_primes

try:
    from pruforge import _kernels
except ImportError:
    _kernels = None


def w_miller_rabin(k):
    s = _pykernels.seed_state(1)
    return sum(k.probable_prime(n, 64, s) == 2 for n in range(3, 200_001, 2))


def w_sampled_density(k):
    total = 0
    for p in primes_of_bitsize(16)[:200]:
        total += k.sampled_hits(p, 1000, 64, _pykernels.seed_state(p))
    return total


def w_trial_division(k):
    primes = sieve_primes(2**16).tolist()
    return sum(k.trial_division(n, primes) for n in range(10**12, 10**12 + 2000))


def w_word_mr(k):
    s = _pykernels.seed_state(2)
    base = 2**62
    return sum(k.probable_prime(base + i, 64, s) == 2 for i in range(1, 40_001, 2))


WORKLOADS = [
    ("miller-rabin, odd n < 2e5", w_miller_rabin),
    ("miller-rabin, n ~ 2^62", w_word_mr),
    ("sampled density, 200 x 1000 (b=16)", w_sampled_density),
    ("trial division, n ~ 1e12", w_trial_division),
]


def timed(fn, k, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(k)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; nothing to compare")
        return
    print(f"{'workload':40s} {'python':>10s} {'cython':>10s} {'speedup':>9s}")
    for name, fn in WORKLOADS:
        tp, outp = timed(fn, _pykernels, args.repeat)
        tc, outc = timed(fn, _kernels, args.repeat)
        if outp != outc:
            raise SystemExit(f"{name}: backends disagree ({outp} != {outc})")
        print(f"{name:40s} {tp:9.3f}s {tc:9.3f}s {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
