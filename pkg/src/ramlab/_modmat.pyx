# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled modular matrix kernels; same contract as ``_modmat_py``.

Entries are int64; moduli must stay below 2**31 so products do not overflow.
"""
import numpy as np


ctypedef long long i64


cdef i64 _inv(i64 a, i64 m) except -1:
    cdef i64 t = 0, newt = 1, r = m, newr = a % m, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if r != 1:
        raise ValueError("not invertible")
    if t < 0:
        t += m
    return t


def matmul_mod(A, B, i64 m):
    cdef i64[:, :] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef i64[:, :] b = np.ascontiguousarray(B, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], l = b.shape[1], i, j, t
    if b.shape[0] != k:
        raise ValueError("shape mismatch")
    out = np.zeros((n, l), dtype=np.int64)
    cdef i64[:, :] o = out
    cdef i64 acc
    for i in range(n):
        for j in range(l):
            acc = 0
            for t in range(k):
                acc = (acc + a[i, t] * b[t, j]) % m
            o[i, j] = (acc + m) % m
    return out


def rank_mod_prime(A, i64 p):
    work = np.array(A, dtype=np.int64, copy=True) % p
    cdef i64[:, :] w = work
    cdef Py_ssize_t nr = w.shape[0], nc = w.shape[1], r, c, j, piv
    cdef Py_ssize_t rank = 0
    cdef i64 inv, f, tmp
    for c in range(nc):
        if rank == nr:
            break
        piv = -1
        for r in range(rank, nr):
            if w[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(nc):
                tmp = w[rank, j]
                w[rank, j] = w[piv, j]
                w[piv, j] = tmp
        inv = _inv(w[rank, c], p)
        for j in range(nc):
            w[rank, j] = (w[rank, j] * inv) % p
        for r in range(nr):
            if r != rank and w[r, c] != 0:
                f = w[r, c]
                for j in range(nc):
                    w[r, j] = ((w[r, j] - f * w[rank, j]) % p + p) % p
        rank += 1
    return rank


def inv_mod(A, i64 ell, i64 m):
    cdef Py_ssize_t n = np.shape(A)[0], r, c, j, piv
    aug_arr = np.zeros((n, 2 * n), dtype=np.int64)
    aug_arr[:, :n] = np.asarray(A, dtype=np.int64) % m
    for r in range(n):
        aug_arr[r, n + r] = 1
    cdef i64[:, :] w = aug_arr
    cdef i64 inv, f, tmp
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if w[r, c] % ell != 0:
                piv = r
                break
        if piv < 0:
            raise ValueError("matrix is not invertible modulo %d" % m)
        if piv != c:
            for j in range(2 * n):
                tmp = w[c, j]
                w[c, j] = w[piv, j]
                w[piv, j] = tmp
        inv = _inv(w[c, c], m)
        for j in range(2 * n):
            w[c, j] = (w[c, j] * inv) % m
        for r in range(n):
            if r != c and w[r, c] != 0:
                f = w[r, c]
                for j in range(2 * n):
                    w[r, j] = ((w[r, j] - f * w[c, j]) % m + m) % m
    return np.ascontiguousarray(aug_arr[:, n:])
