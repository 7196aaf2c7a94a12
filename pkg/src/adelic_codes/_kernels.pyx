# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: F_q row reduction and exhaustive minimum weight.

Same contracts as the reference implementations in _kernels_py.
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def rref(i64[:, ::1] M, i64[:, ::1] add, i64[:, ::1] mul, i64[::1] neg, i64[::1] inv):
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef i64 f, s, tmp
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                tmp = M[r, j]
                M[r, j] = M[p, j]
                M[p, j] = tmp
        s = inv[M[r, c]]
        if s != 1:
            for j in range(c, cols):
                M[r, j] = mul[s, M[r, j]]
        for i in range(rows):
            if i == r:
                continue
            f = M[i, c]
            if f == 0:
                continue
            f = neg[f]
            for j in range(c, cols):
                if M[r, j] != 0:
                    M[i, j] = add[M[i, j], mul[f, M[r, j]]]
        pivots.append(c)
        r += 1
    return np.asarray(M), pivots


def min_weight(G_in, Py_ssize_t block, add_in, mul_in, budget_chunk=None):
    cdef i64[:, ::1] G = np.ascontiguousarray(G_in, dtype=np.int64)
    cdef i64[:, ::1] add = np.ascontiguousarray(add_in, dtype=np.int64)
    cdef i64[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef Py_ssize_t k = G.shape[0], length = G.shape[1]
    cdef Py_ssize_t q = add.shape[0], n = length // block
    cdef Py_ssize_t lead, j, pos, b, t
    cdef i64 old, new, ws, wb, best_s = -1, best_b = -1
    cdef bint any_nz
    # scaled[a, i, :] = a * G[i]; diff[a, i, :] = (a+1 index step) update uses sub
    cdef i64[:, :, ::1] scaled = np.ascontiguousarray(
        np.asarray(mul)[np.arange(q)[:, None, None], np.asarray(G)[None, :, :]])
    sub_np = np.empty((q, q), dtype=np.int64)
    for old in range(q):
        for new in range(q):
            sub_np[new, old] = int(np.nonzero(np.asarray(add)[old] == new)[0][0])
    cdef i64[:, ::1] sub = sub_np  # sub[x, y] = x - y
    cdef i64[::1] cw = np.zeros(length, dtype=np.int64)
    cdef i64[::1] msg = np.zeros(k, dtype=np.int64)
    wit_s = wit_b = None
    for lead in range(k):
        for j in range(k):
            msg[j] = 0
        msg[lead] = 1
        for pos in range(length):
            cw[pos] = scaled[1, lead, pos]
        while True:
            ws = 0
            wb = 0
            for b in range(n):
                any_nz = False
                for t in range(block):
                    if cw[b * block + t] != 0:
                        ws += 1
                        any_nz = True
                if any_nz:
                    wb += 1
            if best_s < 0 or ws < best_s:
                best_s = ws
                wit_s = np.array(msg, dtype=np.int64)
            if best_b < 0 or wb < best_b:
                best_b = wb
                wit_b = np.array(msg, dtype=np.int64)
            # odometer over the free digits lead+1..k-1, last digit fastest
            j = k - 1
            while j > lead:
                old = msg[j]
                new = old + 1
                if new == q:
                    new = 0
                msg[j] = new
                for pos in range(length):
                    cw[pos] = add[sub[cw[pos], scaled[old, j, pos]], scaled[new, j, pos]]
                if new != 0:
                    break
                j -= 1
            if j <= lead:
                break
    return int(best_s), wit_s, int(best_b), wit_b
