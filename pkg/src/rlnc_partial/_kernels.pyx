# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: stream sampling and batched RREF over GF(q).

Mirrors ``_kernels_py`` exactly; see ``rng`` for the stream layout.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint32_t, uint64_t
from libc.stdlib cimport free, malloc

cnp.import_array()

cdef enum:
    MODE_NS = 0
    MODE_SYS = 1
    MODE_NS_ERASURE = 2
    MODE_SYS_ERASURE = 3


cdef struct Stream:
    uint32_t k0
    uint32_t k1
    uint32_t row
    uint32_t trial
    uint32_t purpose
    uint64_t pos
    uint64_t cached
    uint32_t buf[4]


cdef inline void philox(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3,
                        uint32_t k0, uint32_t k1, uint32_t* out) noexcept nogil:
    cdef uint64_t p0, p1
    cdef uint32_t n0, n1, n2, n3
    cdef int i
    for i in range(10):
        p0 = <uint64_t>c0 * <uint64_t>0xD2511F53u
        p1 = <uint64_t>c2 * <uint64_t>0xCD9E8D57u
        n0 = (<uint32_t>(p1 >> 32)) ^ c1 ^ k0
        n1 = <uint32_t>p1
        n2 = (<uint32_t>(p0 >> 32)) ^ c3 ^ k1
        n3 = <uint32_t>p0
        c0 = n0
        c1 = n1
        c2 = n2
        c3 = n3
        k0 = k0 + 0x9E3779B9u
        k1 = k1 + 0xBB67AE85u
    out[0] = c0
    out[1] = c1
    out[2] = c2
    out[3] = c3


def philox_block(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3, uint32_t k0, uint32_t k1):
    """One Philox4x32-10 block, for known-answer checks."""
    cdef uint32_t out[4]
    philox(c0, c1, c2, c3, k0, k1, out)
    return (out[0], out[1], out[2], out[3])


cdef inline void stream_init(Stream* s, uint32_t k0, uint32_t k1, uint32_t trial,
                             uint32_t row, uint32_t purpose) noexcept nogil:
    s.k0 = k0
    s.k1 = k1
    s.trial = trial
    s.row = row
    s.purpose = purpose
    s.pos = 0
    s.cached = <uint64_t>-1


cdef inline uint32_t next_word(Stream* s) noexcept nogil:
    cdef uint64_t b = s.pos >> 2
    cdef uint32_t w
    if b != s.cached:
        philox(<uint32_t>b, s.row, s.trial, s.purpose, s.k0, s.k1, s.buf)
        s.cached = b
    w = s.buf[s.pos & 3]
    s.pos += 1
    return w


cdef inline uint32_t bounded(Stream* s, uint64_t bound) noexcept nogil:
    cdef uint64_t limit = (<uint64_t>1 << 32) - ((<uint64_t>1 << 32) % bound)
    cdef uint32_t w
    while True:
        w = next_word(s)
        if w < limit:
            return <uint32_t>(w % bound)


cdef inline void coded_row(int64_t* dst, uint32_t k0, uint32_t k1, uint32_t trial, uint32_t row,
                           int q, int p, int m, int k) noexcept nogil:
    cdef Stream s
    cdef int i, per, shift
    cdef uint32_t w = 0
    stream_init(&s, k0, k1, trial, row, 0)
    if p == 2:
        per = 32 // m
        for i in range(k):
            if i % per == 0:
                w = next_word(&s)
            shift = (i % per) * m
            dst[i] = (w >> shift) & <uint32_t>(q - 1)
    else:
        for i in range(k):
            dst[i] = bounded(&s, q)


cdef inline uint64_t coded_mask_gf2(uint32_t k0, uint32_t k1, uint32_t trial, uint32_t row,
                                    int k) noexcept nogil:
    # same bits coded_row would produce for q = 2, packed into a mask
    cdef Stream s
    cdef uint64_t lo, hi
    stream_init(&s, k0, k1, trial, row, 0)
    lo = next_word(&s)
    if k <= 32:
        return lo & (((<uint64_t>1) << k) - 1)
    hi = next_word(&s)
    return lo | ((hi & (((<uint64_t>1) << (k - 32)) - 1)) << 32)


cdef inline int64_t fmul(int64_t a, int64_t b, const int64_t* ex, const int64_t* lg) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return ex[lg[a] + lg[b]]


cdef inline int64_t fsub(int64_t a, int64_t b, int p, int m) noexcept nogil:
    cdef int64_t out = 0, scale = 1, da, db
    cdef int d
    if p == 2:
        return a ^ b
    if m == 1:
        return ((a - b) % p + p) % p
    for d in range(m):
        da = (a // scale) % p
        db = (b // scale) % p
        out += ((da - db + p) % p) * scale
        scale *= p
    return out


cdef void reduce_gf2(int64_t* rows, int nrows, int k, int32_t* rank_out, int32_t* units_out) noexcept nogil:
    # rows are bitmasks over the k columns
    cdef int c, r, i, rank = 0, units = 0
    cdef uint64_t bit, tmp, piv
    cdef uint64_t* R = <uint64_t*>rows
    for c in range(k):
        bit = (<uint64_t>1) << c
        r = rank
        while r < nrows and not (R[r] & bit):
            r += 1
        if r == nrows:
            continue
        tmp = R[r]
        R[r] = R[rank]
        R[rank] = tmp
        piv = tmp
        for i in range(nrows):
            if i != rank and (R[i] & bit):
                R[i] ^= piv
        rank += 1
    for i in range(rank):
        if R[i] != 0 and (R[i] & (R[i] - 1)) == 0:
            units += 1
    rank_out[0] = rank
    units_out[0] = units


cdef void reduce_general(int64_t* A, int nrows, int k, int q, int p, int m,
                         const int64_t* ex, const int64_t* lg,
                         int32_t* rank_out, int32_t* units_out) noexcept nogil:
    cdef int c, r, i, j, rank = 0, units = 0, nz
    cdef int64_t tmp, f, pinv
    for c in range(k):
        r = rank
        while r < nrows and A[r * k + c] == 0:
            r += 1
        if r == nrows:
            continue
        if r != rank:
            for j in range(k):
                tmp = A[r * k + j]
                A[r * k + j] = A[rank * k + j]
                A[rank * k + j] = tmp
        pinv = ex[(q - 1 - lg[A[rank * k + c]]) % (q - 1)]
        for j in range(c, k):
            A[rank * k + j] = fmul(A[rank * k + j], pinv, ex, lg)
        for i in range(nrows):
            if i == rank:
                continue
            f = A[i * k + c]
            if f == 0:
                continue
            for j in range(c, k):
                A[i * k + j] = fsub(A[i * k + j], fmul(f, A[rank * k + j], ex, lg), p, m)
        rank += 1
    for i in range(rank):
        nz = 0
        for j in range(k):
            if A[i * k + j] != 0:
                nz += 1
        if nz == 1:
            units += 1
    rank_out[0] = rank
    units_out[0] = units


def reduce_batch(mats, int q, int p, int m, exp, log):
    """Rank and number of unit vectors in the row space, per matrix."""
    cdef const int64_t[:, :, ::1] M = np.ascontiguousarray(mats, dtype=np.int64)
    cdef const int64_t[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const int64_t[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef Py_ssize_t T = M.shape[0], t
    cdef int n = M.shape[1], k = M.shape[2], i, j
    rank = np.zeros(T, dtype=np.int32)
    units = np.zeros(T, dtype=np.int32)
    cdef int32_t[::1] rk = rank
    cdef int32_t[::1] un = units
    cdef bint gf2 = q == 2 and k <= 64
    cdef int64_t* buf = <int64_t*>malloc(max(n * k, 1) * sizeof(int64_t))
    cdef uint64_t mask
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for t in range(T):
                if gf2:
                    for i in range(n):
                        mask = 0
                        for j in range(k):
                            if M[t, i, j]:
                                mask |= (<uint64_t>1) << j
                        (<uint64_t*>buf)[i] = mask
                    reduce_gf2(buf, n, k, &rk[t], &un[t])
                else:
                    for i in range(n):
                        for j in range(k):
                            buf[i * k + j] = M[t, i, j]
                    reduce_general(buf, n, k, q, p, m, &ex[0], &lg[0], &rk[t], &un[t])
    finally:
        free(buf)
    return rank, units


def simulate_trials(uint32_t key0, uint32_t key1, int q, int p, int m, int k, int mode,
                    int n, int n_T, uint64_t eps_num, uint64_t eps_den,
                    Py_ssize_t t0, Py_ssize_t t1, exp, log):
    """Draw and reduce the received matrices of trials t0..t1-1."""
    cdef const int64_t[::1] ex = np.ascontiguousarray(exp, dtype=np.int64)
    cdef const int64_t[::1] lg = np.ascontiguousarray(log, dtype=np.int64)
    cdef Py_ssize_t T = t1 - t0, t
    rank = np.zeros(T, dtype=np.int32)
    units = np.zeros(T, dtype=np.int32)
    cdef int32_t[::1] rk = rank
    cdef int32_t[::1] un = units
    cdef int maxrows = n if mode == MODE_NS or mode == MODE_SYS else n_T
    cdef int n_src = k if k < n_T else n_T
    cdef bint gf2 = q == 2 and k <= 64
    cdef int64_t* buf = <int64_t*>malloc(max(maxrows * k, 1) * sizeof(int64_t))
    cdef int64_t* row = <int64_t*>malloc(max(k, 1) * sizeof(int64_t))
    cdef int* perm = <int*>malloc(max(n_T, 1) * sizeof(int))
    cdef int* picked = <int*>malloc(max(maxrows, 1) * sizeof(int))
    cdef int i, j, pos, nrows, tmp
    cdef uint32_t trial
    cdef uint64_t mask
    cdef Stream sel
    if buf == NULL or row == NULL or perm == NULL or picked == NULL:
        free(buf); free(row); free(perm); free(picked)
        raise MemoryError()
    try:
        with nogil:
            for t in range(T):
                trial = <uint32_t>(t0 + t)
                stream_init(&sel, key0, key1, trial, 0, 1)
                # choose received positions; coded row for position pos is
                # pos (non-systematic) or pos - k (systematic)
                nrows = 0
                if mode == MODE_NS:
                    for i in range(n):
                        picked[i] = i
                    nrows = n
                elif mode == MODE_SYS:
                    for i in range(n_T):
                        perm[i] = i
                    for i in range(n):
                        j = i + <int>bounded(&sel, n_T - i)
                        tmp = perm[i]
                        perm[i] = perm[j]
                        perm[j] = tmp
                        picked[i] = perm[i]
                    nrows = n
                else:
                    for pos in range(n_T):
                        if bounded(&sel, eps_den) >= eps_num:
                            picked[nrows] = pos
                            nrows += 1
                for i in range(nrows):
                    pos = picked[i]
                    if gf2 and not ((mode == MODE_SYS or mode == MODE_SYS_ERASURE) and pos < n_src):
                        if mode == MODE_SYS or mode == MODE_SYS_ERASURE:
                            pos -= k
                        (<uint64_t*>buf)[i] = coded_mask_gf2(key0, key1, trial, <uint32_t>pos, k)
                        continue
                    if (mode == MODE_SYS or mode == MODE_SYS_ERASURE) and pos < n_src:
                        for j in range(k):
                            row[j] = 0
                        row[pos] = 1
                    elif mode == MODE_SYS or mode == MODE_SYS_ERASURE:
                        coded_row(row, key0, key1, trial, <uint32_t>(pos - k), q, p, m, k)
                    else:
                        coded_row(row, key0, key1, trial, <uint32_t>pos, q, p, m, k)
                    if gf2:
                        mask = 0
                        for j in range(k):
                            if row[j]:
                                mask |= (<uint64_t>1) << j
                        (<uint64_t*>buf)[i] = mask
                    else:
                        for j in range(k):
                            buf[i * k + j] = row[j]
                if gf2:
                    reduce_gf2(buf, nrows, k, &rk[t], &un[t])
                else:
                    reduce_general(buf, nrows, k, q, p, m, &ex[0], &lg[0], &rk[t], &un[t])
    finally:
        free(buf); free(row); free(perm); free(picked)
    return rank, units
