"""Pure-Python (numpy-vectorised) kernels; drop-in twin of ``_kernels.pyx``.

Both backends consume the same counter-based streams (see :mod:`.rng`) and
must return identical arrays for identical arguments.
"""
from __future__ import annotations

import numpy as np

from .rng import PURPOSE_COEFF, PURPOSE_SELECT, rejection_limit, stream_words

MODE_NS, MODE_SYS, MODE_NS_ERASURE, MODE_SYS_ERASURE = range(4)


# -- field helpers over arrays ------------------------------------------
def _fmul(a, b, exp, log):
    prod = exp[log[a] + log[b]]
    return np.where((a == 0) | (b == 0), 0, prod)


def _fsub(a, b, p, m):
    if p == 2:
        return a ^ b
    if m == 1:
        return (a - b) % p
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    scale = 1
    for _ in range(m):
        out += ((a // scale % p - b // scale % p) % p) * scale
        scale *= p
    return out


def _finv(a, q, exp, log):
    return exp[(q - 1 - log[a]) % (q - 1)]


# -- reduction -----------------------------------------------------------
def _reduce_gf2(mats):
    T, n, k = mats.shape
    rows = np.bitwise_or.reduce(
        mats.astype(np.uint64) << np.arange(k, dtype=np.uint64), axis=2
    ) if k else np.zeros((T, n), dtype=np.uint64)
    is_piv = np.zeros((T, n), dtype=bool)
    tix = np.arange(T)
    for c in range(k):
        bit = np.uint64(1) << np.uint64(c)
        hit = (rows & bit) != 0
        cand = hit & ~is_piv
        has = cand.any(axis=1)
        piv = cand.argmax(axis=1)
        prow = np.where(has, rows[tix, piv], np.uint64(0))
        is_piv[tix[has], piv[has]] = True
        apply = hit & has[:, None]
        apply[tix, piv] = False
        rows = np.where(apply, rows ^ prow[:, None], rows)
    single = (rows != 0) & ((rows & (rows - np.uint64(1))) == 0)
    return is_piv.sum(axis=1).astype(np.int32), single.sum(axis=1).astype(np.int32)


def _reduce_general(mats, q, p, m, exp, log):
    A = np.array(mats, dtype=np.int64, copy=True)
    T, n, k = A.shape
    is_piv = np.zeros((T, n), dtype=bool)
    for c in range(k):
        cand = (A[:, :, c] != 0) & ~is_piv
        has = cand.any(axis=1)
        S = np.nonzero(has)[0]
        if S.size == 0:
            continue
        piv = cand.argmax(axis=1)[S]
        prow = A[S, piv, :]
        prow = _fmul(_finv(prow[:, c], q, exp, log)[:, None], prow, exp, log)
        A[S, piv, :] = prow
        is_piv[S, piv] = True
        f = A[S, :, c].copy()
        f[np.arange(S.size), piv] = 0
        A[S] = _fsub(A[S], _fmul(f[:, :, None], prow[:, None, :], exp, log), p, m)
    units = ((A != 0).sum(axis=2) == 1).sum(axis=1)
    return is_piv.sum(axis=1).astype(np.int32), units.astype(np.int32)


def reduce_batch(mats, q, p, m, exp, log):
    """Rank and number of unit vectors in the row space, per matrix."""
    mats = np.asarray(mats, dtype=np.int64)
    if mats.shape[1] == 0:
        zero = np.zeros(mats.shape[0], dtype=np.int32)
        return zero, zero.copy()
    if q == 2 and mats.shape[2] <= 64:
        return _reduce_gf2(mats)
    return _reduce_general(mats, q, p, m, np.asarray(exp), np.asarray(log))


# -- stream sampling -----------------------------------------------------
def _coded_rows(key, q, p, m, k, trials, R):
    """(T, R, k) coefficients of coded rows 0..R-1 for each trial."""
    T = trials.size
    if R == 0 or k == 0:
        return np.zeros((T, R, k), dtype=np.int64)
    t = trials[:, None, None]
    r = np.arange(R, dtype=np.uint64)[None, :, None]
    if p == 2:
        per = 32 // m
        W = -(-k // per)
        words = stream_words(key, PURPOSE_COEFF, t, r, np.arange(W, dtype=np.uint64)[None, None, :])
        i = np.arange(k)
        shifts = ((i % per) * m).astype(np.uint64)
        out = (words[:, :, i // per] >> shifts) & np.uint64(q - 1)
        return out.astype(np.int64)
    limit = rejection_limit(q)
    Wn = k + 8
    words = stream_words(key, PURPOSE_COEFF, t, r, np.arange(Wn, dtype=np.uint64)[None, None, :])
    acc = words < np.uint64(limit)
    order = np.argsort(~acc, axis=-1, kind="stable")[..., :k]
    out = (np.take_along_axis(words, order, axis=-1) % np.uint64(q)).astype(np.int64)
    short = np.argwhere(acc.sum(axis=-1) < k)
    for ti, ri in short:
        vals, w = [], 0
        while len(vals) < k:
            u = int(stream_words(key, PURPOSE_COEFF, trials[ti], ri, w))
            if u < limit:
                vals.append(u % q)
            w += 1
        out[ti, ri] = vals
    return out


def _draw_bounded(key, trials, ptr, bound):
    """One bounded draw per trial from the selection stream; advances ``ptr``."""
    limit = np.uint64(rejection_limit(bound))
    out = np.empty(trials.size, dtype=np.int64)
    todo = np.arange(trials.size)
    while todo.size:
        u = stream_words(key, PURPOSE_SELECT, trials[todo], 0, ptr[todo])
        ptr[todo] += 1
        ok = u < limit
        out[todo[ok]] = (u[ok] % np.uint64(bound)).astype(np.int64)
        todo = todo[~ok]
    return out


def _positions(key, q, p, m, k, n_T, trials):
    """(T, n_T, k) coding vectors of every transmitted position (systematic)."""
    T = trials.size
    n_src = min(k, n_T)
    units = np.zeros((T, n_src, k), dtype=np.int64)
    units[:, np.arange(n_src), np.arange(n_src)] = 1
    coded = _coded_rows(key, q, p, m, k, trials, max(n_T - k, 0))
    return np.concatenate([units, coded], axis=1)


def generate(key, q, p, m, k, mode, n, n_T, eps_num, eps_den, t0, t1):
    """Received matrices for trials t0..t1-1, erased rows zeroed."""
    trials = np.arange(t0, t1, dtype=np.uint64)
    T = trials.size
    ptr = np.zeros(T, dtype=np.uint64)
    if mode == MODE_NS:
        return _coded_rows(key, q, p, m, k, trials, n)
    if mode == MODE_SYS:
        allrows = _positions(key, q, p, m, k, n_T, trials)
        perm = np.tile(np.arange(n_T), (T, 1))
        tix = np.arange(T)
        for i in range(n):
            j = i + _draw_bounded(key, trials, ptr, n_T - i)
            a, b = perm[tix, i].copy(), perm[tix, j].copy()
            perm[tix, i], perm[tix, j] = b, a
        return np.take_along_axis(allrows, perm[:, :n, None], axis=1)
    if mode == MODE_NS_ERASURE:
        allrows = _coded_rows(key, q, p, m, k, trials, n_T)
    elif mode == MODE_SYS_ERASURE:
        allrows = _positions(key, q, p, m, k, n_T, trials)
    else:
        raise ValueError(f"unknown mode code {mode}")
    kept = np.empty((T, n_T), dtype=bool)
    for pos in range(n_T):
        kept[:, pos] = _draw_bounded(key, trials, ptr, eps_den) >= eps_num
    return allrows * kept[:, :, None]


def simulate_trials(key0, key1, q, p, m, k, mode, n, n_T, eps_num, eps_den, t0, t1, exp, log):
    mats = generate((key0, key1), q, p, m, k, mode, n, n_T, eps_num, eps_den, t0, t1)
    return reduce_batch(mats, q, p, m, exp, log)
