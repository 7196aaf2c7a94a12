"""Reference kernels: F_q row reduction and exhaustive minimum weight.

Field arithmetic goes through the integer lookup tables of a Field, so the
same code serves prime and extension fields. These run when the compiled
extension is unavailable or disabled.
"""

import numpy as np


def rref(M, add, mul, neg, inv):
    """Reduced row echelon form of M (modified in place). Returns (M, pivot columns)."""
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        M[r] = mul[inv[M[r, c]], M[r]]
        factors = M[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            M[hit] = add[M[hit], mul[neg[factors[hit]][:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
    return M, pivots


def min_weight(G, block, add, mul, budget_chunk=4096):
    """Minimum symbol and block weight over all nonzero codewords of the row space of G.

    Only messages whose first nonzero entry is 1 are visited; weights are
    invariant under scaling. Returns (symbol weight, symbol witness message,
    block weight, block witness message); weights are -1 when G has no rows.
    """
    k, length = G.shape
    q = add.shape[0]
    n = length // block
    best_s, best_b = -1, -1
    wit_s = wit_b = None
    # scaled[a, i] = a * G[i]
    scaled = mul[np.arange(q)[:, None, None], G[None, :, :]]
    for lead in range(k):
        free = k - 1 - lead
        total = q ** free
        base = scaled[1, lead]
        for start in range(0, total, budget_chunk):
            idx = np.arange(start, min(total, start + budget_chunk))
            cw = np.broadcast_to(base, (idx.size, length)).copy()
            msgs = np.zeros((idx.size, k), dtype=np.int64)
            msgs[:, lead] = 1
            rest = idx.copy()
            for j in range(k - 1, lead, -1):
                digit = rest % q
                rest //= q
                msgs[:, j] = digit
                cw = add[cw, scaled[digit, j]]
            nz = cw != 0
            ws = nz.sum(axis=1)
            wb = nz.reshape(idx.size, n, block).any(axis=2).sum(axis=1)
            i = int(np.argmin(ws))
            if best_s < 0 or ws[i] < best_s:
                best_s, wit_s = int(ws[i]), msgs[i].copy()
            i = int(np.argmin(wb))
            if best_b < 0 or wb[i] < best_b:
                best_b, wit_b = int(wb[i]), msgs[i].copy()
    return best_s, wit_s, best_b, wit_b
