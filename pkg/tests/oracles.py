"""Brute-force references used by the tests; deliberately naive."""

from itertools import product

from adelic_codes.cohomology import ambient_basis, is_section
from adelic_codes.gf import RationalFunction


def sections_by_enumeration(g, ambient=None):
    """Every member of H^0(F, g) inside the ambient sum, found by trying all coefficient vectors."""
    F = g.F
    ambient = ambient_basis(g) if ambient is None else ambient
    found = set()
    for coeffs in product(range(F.q), repeat=len(ambient)):
        comps = [RationalFunction.zero(F)] * g.r
        for c, (j, f) in zip(coeffs, ambient):
            if c:
                comps[j] = comps[j] + RationalFunction.const(F, c) * f
        f = tuple(comps)
        if is_section(g, f):
            found.add(f)
    return found


def span(F, basis, r):
    out = set()
    for coeffs in product(range(F.q), repeat=len(basis)):
        comps = [RationalFunction.zero(F)] * r
        for c, f in zip(coeffs, basis):
            if c:
                k = RationalFunction.const(F, c)
                comps = [a + k * b for a, b in zip(comps, f)]
        out.add(tuple(comps))
    return out


def weight_enumeration(F, G, block=1):
    """(symbol distance, block distance) of the row space of G by listing every codeword."""
    k, length = len(G), len(G[0])
    best_s = best_b = None
    for msg in product(range(F.q), repeat=k):
        if not any(msg):
            continue
        word = [0] * length
        for c, row in zip(msg, G):
            for i, a in enumerate(row):
                word[i] = F.add[word[i]][F.mul[c][int(a)]]
        ws = sum(1 for a in word if a)
        wb = sum(1 for i in range(0, length, block) if any(word[i:i + block]))
        best_s = ws if best_s is None else min(best_s, ws)
        best_b = wb if best_b is None else min(best_b, wb)
    return best_s, best_b
