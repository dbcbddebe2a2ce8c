# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: butterfly transforms, brute-force Walsh oracle,
coset-table expansion and sparse polynomial evaluation.

Mirrors bentcyc._kernels._pykernels; the two must agree bit for bit.
"""

IMPL_NAME = "c"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline void _fwht(long long* v, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t h = 1, i, j
    cdef long long x, y
    while h < n:
        i = 0
        while i < n:
            j = i
            while j < i + h:
                x = v[j]
                y = v[j + h]
                v[j] = x + y
                v[j + h] = x - y
                j += 1
            i += 2 * h
        h <<= 1


def fwht_i64(long long[::1] v):
    """In-place Walsh-Hadamard butterfly over int64, len(v) a power of two."""
    with nogil:
        _fwht(&v[0], v.shape[0])


def mobius_u8(unsigned char[::1] v):
    """In-place subset-XOR (Moebius) butterfly over bits stored as uint8."""
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t h = 1, i, j
    with nogil:
        while h < n:
            i = 0
            while i < n:
                j = i
                while j < i + h:
                    v[j + h] ^= v[j]
                    j += 1
                i += 2 * h
            h <<= 1


def walsh_from_bits(const unsigned char[::1] bits, const int[::1] perm,
                    long long[::1] out, long long[::1] work):
    """out[b] = sum_x (-1)^(f(x) + <coords b, coords x>) gathered through perm.

    perm maps the field point b to its Hadamard-domain index (the Gram map),
    so out is indexed by the element bitmask of b.
    """
    cdef Py_ssize_t n = bits.shape[0]
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            work[i] = 1 - 2 * <long long> bits[i]
        _fwht(&work[0], n)
        for i in range(n):
            out[i] = work[perm[i]]


def bent_from_bits(const unsigned char[::1] bits, int m, long long[::1] work):
    """True iff every Walsh coefficient of the table has |.| == 2^m.

    Permutation-free: the Gram map is a bijection, so the value multiset of
    the plain Hadamard transform already decides bentness.
    """
    cdef Py_ssize_t n = bits.shape[0]
    cdef Py_ssize_t i
    cdef long long target = (<long long> 1) << m
    cdef bint ok = 1
    with nogil:
        for i in range(n):
            work[i] = 1 - 2 * <long long> bits[i]
        _fwht(&work[0], n)
        for i in range(n):
            if work[i] != target and work[i] != -target:
                ok = 0
                break
    return bool(ok)


def expand_coset(const int[::1] coset_idx, const unsigned char[::1] vals,
                 unsigned char[::1] out):
    """out[x] = vals[coset_idx[x]] for every x (coset-constant table expansion)."""
    cdef Py_ssize_t n = coset_idx.shape[0]
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            out[i] = vals[coset_idx[i]]


def naive_walsh(const unsigned char[::1] bits, const int[::1] logt,
                const int[::1] expt, unsigned long long trmask,
                long long[::1] out):
    """O(4^n) Walsh transform straight from the definition (oracle path).

    Field products via log/antilog tables; Tr(y) via the linear trace mask.
    """
    cdef Py_ssize_t size = bits.shape[0]
    cdef Py_ssize_t b, x
    cdef long long acc
    cdef int lb
    cdef unsigned long long prod
    cdef int sgn
    with nogil:
        for b in range(size):
            acc = 0
            if b == 0:
                for x in range(size):
                    acc += 1 - 2 * <long long> bits[x]
            else:
                lb = logt[b]
                acc = 1 - 2 * <long long> bits[0]
                for x in range(1, size):
                    prod = <unsigned long long> expt[lb + logt[x]]
                    sgn = bits[x] ^ (__builtin_popcountll(prod & trmask) & 1)
                    acc += 1 - 2 * sgn
            out[b] = acc


def sparse_eval_all(const long long[::1] coeff_logs, const long long[::1] exps,
                    const int[::1] expt, long long N, int[::1] out):
    """Evaluate sum_j c_j x^{e_j} at every nonzero x = w^L, L = 0..N-1.

    coeff_logs[j] = log of the (nonzero) coefficient, exps[j] the exponent.
    out[L] accumulates the field value by XOR; caller zeroes out first.
    """
    cdef Py_ssize_t terms = coeff_logs.shape[0]
    cdef Py_ssize_t j
    cdef long long L, idx, step, cl
    with nogil:
        for j in range(terms):
            cl = coeff_logs[j] % N
            step = exps[j] % N
            idx = cl
            for L in range(N):
                out[L] ^= expt[idx]
                idx += step
                if idx >= N:
                    idx -= N
