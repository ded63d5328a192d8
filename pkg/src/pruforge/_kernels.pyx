# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; bit-identical twin of ``_pykernels``.

Arguments wider than 64 bits are routed by the callers to the Python path,
so every integer here is a ``uint64``.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

from ._pykernels import SMALL_ODD_PRIMES

BACKEND = "cython"

cdef enum:
    N_SMALL = 171

cdef uint64_t _small[N_SMALL]
for _i, _sp in enumerate(SMALL_ODD_PRIMES):
    _small[_i] = _sp
assert len(SMALL_ODD_PRIMES) == N_SMALL


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _next(uint64_t* s) nogil:
    cdef uint64_t result = _rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


cdef inline int _bitlen(uint64_t x) nogil:
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


cdef inline uint64_t _below_eq(uint64_t* s, uint64_t span) nogil:
    cdef int drop
    cdef uint64_t r
    if span == 0:
        return 0
    drop = 64 - _bitlen(span)
    while True:
        r = _next(s) >> drop
        if r <= span:
            return r


cdef inline uint64_t _mulmod(uint64_t a, uint64_t b, uint64_t m) nogil:
    return <uint64_t>((<u128>a * b) % m)


cdef inline uint64_t _powmod(uint64_t b, uint64_t e, uint64_t m) nogil:
    cdef uint64_t r = 1
    b %= m
    while e:
        if e & 1:
            r = _mulmod(r, b, m)
        b = _mulmod(b, b, m)
        e >>= 1
    return r


cdef int _probable_prime(uint64_t n, int rounds, uint64_t* s) nogil:
    cdef int i, j, r
    cdef uint64_t d, x, a, nm1, span
    if n < 2:
        return 0
    if n < 4:
        return 3
    if n & 1 == 0:
        return 0
    for i in range(N_SMALL):
        if _small[i] >= n:
            break
        if n % _small[i] == 0:
            return 0
    nm1 = n - 1
    d = nm1
    r = 0
    while d & 1 == 0:
        d >>= 1
        r += 1
    span = n - 4
    for i in range(rounds):
        a = 2 + _below_eq(s, span)
        x = _powmod(a, d, n)
        if x == 1 or x == nm1:
            continue
        for j in range(r - 1):
            x = _mulmod(x, x, n)
            if x == nm1:
                break
        else:
            return 1
    return 2


cdef void _load(list state, uint64_t* s):
    cdef int i
    for i in range(4):
        s[i] = state[i]


cdef void _store(list state, uint64_t* s):
    cdef int i
    for i in range(4):
        state[i] = s[i]


def next_u64(list state):
    cdef uint64_t s[4]
    _load(state, s)
    cdef uint64_t out = _next(s)
    _store(state, s)
    return out


def probable_prime(uint64_t n, int rounds, list state):
    cdef uint64_t s[4]
    cdef int verdict
    _load(state, s)
    with nogil:
        verdict = _probable_prime(n, rounds, s)
    _store(state, s)
    return verdict


def sampled_hits(uint64_t p, long n_samples, int rounds, list state):
    cdef uint64_t s[4]
    cdef uint64_t span = p // 2 - 1
    cdef uint64_t twop = 2 * p
    cdef uint64_t k
    cdef long i, hits = 0
    _load(state, s)
    with nogil:
        for i in range(n_samples):
            k = 1 + _below_eq(s, span)
            if _probable_prime(twop * k + 1, rounds, s) >= 2:
                hits += 1
    _store(state, s)
    return hits


def trial_division(uint64_t n, primes):
    cdef uint64_t root, sp, last = 1, f
    if n < 2:
        return False
    root = _isqrt(n)
    for obj in primes:
        sp = obj
        if sp > root:
            return True
        if n % sp == 0:
            return n == sp
        last = sp
    f = (last // 6) * 6 + 5
    cdef bint found = False
    with nogil:
        while f <= root:
            if n % f == 0 or n % (f + 2) == 0:
                found = True
                break
            f += 6
    return not found


cdef uint64_t _isqrt(uint64_t n):
    cdef uint64_t x = <uint64_t>(<double>n ** 0.5)
    while x > 0xFFFFFFFF or x * x > n:
        x -= 1
    while (x + 1) <= 0xFFFFFFFF and (x + 1) * (x + 1) <= n:
        x += 1
    return x
