"""Pure-Python fallback for the compiled kernels.

Same signatures and bit-exact results as _ckernels; used when the extension
is unavailable or BENTCYC_KERNELS=py is set.
"""

IMPL_NAME = "python"


def fwht_i64(v):
    """In-place Walsh-Hadamard butterfly over int64, len(v) a power of two."""
    n = len(v)
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                x = v[j]
                y = v[j + h]
                v[j] = x + y
                v[j + h] = x - y
        h <<= 1


def mobius_u8(v):
    """In-place subset-XOR (Moebius) butterfly over bits stored as uint8."""
    n = len(v)
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                v[j + h] ^= v[j]
        h <<= 1


def walsh_from_bits(bits, perm, out, work):
    n = len(bits)
    for i in range(n):
        work[i] = 1 - 2 * bits[i]
    fwht_i64(work)
    for i in range(n):
        out[i] = work[perm[i]]


def bent_from_bits(bits, m, work):
    n = len(bits)
    for i in range(n):
        work[i] = 1 - 2 * bits[i]
    fwht_i64(work)
    target = 1 << m
    for i in range(n):
        if work[i] != target and work[i] != -target:
            return False
    return True


def expand_coset(coset_idx, vals, out):
    for i, ci in enumerate(coset_idx):
        out[i] = vals[ci]


def naive_walsh(bits, logt, expt, trmask, out):
    size = len(bits)
    for b in range(size):
        if b == 0:
            acc = sum(1 - 2 * bits[x] for x in range(size))
        else:
            lb = logt[b]
            acc = 1 - 2 * bits[0]
            for x in range(1, size):
                prod = expt[lb + logt[x]]
                sgn = bits[x] ^ ((prod & trmask).bit_count() & 1)
                acc += 1 - 2 * sgn
        out[b] = acc


def sparse_eval_all(coeff_logs, exps, expt, N, out):
    for cl, e in zip(coeff_logs, exps):
        idx = cl % N
        step = e % N
        for L in range(N):
            out[L] ^= expt[idx]
            idx += step
            if idx >= N:
                idx -= N
