"""Pure-Python implementations of the hot kernels.

This module is the reference for ``_kernels.pyx``: both must consume the
generator state identically and return identical results, so every change
here has a twin there.

Generator state is a ``list`` of four Python ints (xoshiro256** words) that
the kernels advance in place.
"""

from math import isqrt

MASK64 = 0xFFFFFFFFFFFFFFFF

# Odd primes below 2**10, used by the composite pre-screen.
SMALL_ODD_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
    157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233,
    239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317,
    331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419,
    421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503,
    509, 521, 523, 541, 547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607,
    613, 617, 619, 631, 641, 643, 647, 653, 659, 661, 673, 677, 683, 691, 701,
    709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797, 809, 811,
    821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911,
    919, 929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997, 1009, 1013,
    1019, 1021,
)

# Verdict codes shared with the compiled kernel.
COMPOSITE_EXACT = 0
COMPOSITE_MR = 1
PROBABLE_PRIME = 2
PRIME_EXACT = 3

BACKEND = "python"


def splitmix64(x):
    """Return ``(next_state, output)`` of one SplitMix64 step."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


def seed_state(seed):
    x = seed & MASK64
    state = []
    for _ in range(4):
        x, out = splitmix64(x)
        state.append(out)
    return state


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


def next_u64(s):
    """Advance the xoshiro256** state ``s`` in place; return 64 bits."""
    result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
    t = (s[1] << 17) & MASK64
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


def uniform_below_eq(s, span):
    """Uniform integer in ``[0, span]`` by rejection on ``span.bit_length()`` bits.

    Words are concatenated most-significant first and the surplus low bits
    dropped, so a range of at most 64 bits costs exactly one word per try.
    """
    if span == 0:
        return 0
    nbits = span.bit_length()
    nwords = (nbits + 63) >> 6
    drop = 64 * nwords - nbits
    while True:
        r = 0
        for _ in range(nwords):
            r = (r << 64) | next_u64(s)
        r >>= drop
        if r <= span:
            return r


def _prescreen(n):
    for sp in SMALL_ODD_PRIMES:
        if sp >= n:
            break
        if n % sp == 0:
            return True
    return False


def probable_prime(n, rounds, s):
    """Classify ``n`` with a composite pre-screen then Miller-Rabin.

    Returns one of the verdict codes. Witnesses are drawn uniformly from
    ``[2, n - 2]`` with replacement; primes always run all ``rounds``.
    """
    if n < 2:
        return COMPOSITE_EXACT
    if n < 4:
        return PRIME_EXACT
    if n & 1 == 0:
        return COMPOSITE_EXACT
    if _prescreen(n):
        return COMPOSITE_EXACT
    d = n - 1
    r = 0
    while d & 1 == 0:
        d >>= 1
        r += 1
    nm1 = n - 1
    span = n - 4
    for _ in range(rounds):
        a = 2 + uniform_below_eq(s, span)
        x = pow(a, d, n)
        if x == 1 or x == nm1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == nm1:
                break
        else:
            return COMPOSITE_MR
    return PROBABLE_PRIME


def sampled_hits(p, n_samples, rounds, s):
    """Count probable primes among ``2kp + 1`` for ``n_samples`` uniform ``k`` in ``[1, p // 2]``."""
    span = p // 2 - 1
    twop = 2 * p
    hits = 0
    for _ in range(n_samples):
        k = 1 + uniform_below_eq(s, span)
        if probable_prime(twop * k + 1, rounds, s) >= PROBABLE_PRIME:
            hits += 1
    return hits


def trial_division(n, primes):
    """Deterministic primality of ``n`` by division up to ``isqrt(n)``.

    ``primes`` is an ascending sequence starting at 2; past its end the
    search continues over 6j +/- 1.
    """
    if n < 2:
        return False
    root = isqrt(n)
    last = 1
    for sp in primes:
        if sp > root:
            return True
        if n % sp == 0:
            return n == sp
        last = sp
    f = (last // 6) * 6 + 5  # may re-test ``last``; never skips a 6j + 1
    while f <= root:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True
