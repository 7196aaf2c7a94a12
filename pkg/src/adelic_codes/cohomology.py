"""Global sections, Serre-dual h^1, Euler characteristic and splitting type on P^1."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .adele import AdelicMatrix, degree, idele_of_divisor, mat_inv, serre_dual
from .curve import Differential, Divisor, Place, ProjectiveLine, riemann_roch_basis, valuation
from .gf import Poly, RationalFunction


class GenusError(NotImplementedError):
    """Raised when a genus-zero-only procedure is asked about another curve."""


class ProfileError(ArithmeticError):
    """The h^0 profile of twists is not that of a split bundle (a solver bug)."""


@dataclass
class SectionSpace:
    """F_q-basis of H^0(F, g); each basis vector is an r-tuple of rational functions."""

    g: AdelicMatrix
    basis: list
    ambient: list = field(default_factory=list, repr=False)
    coords: np.ndarray | None = field(default=None, repr=False)

    @property
    def r(self) -> int:
        return self.g.r

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def combination(self, coeffs) -> tuple:
        """The section sum_i coeffs[i] * basis[i]."""
        F = self.g.F
        out = [RationalFunction.zero(F)] * self.r
        for c, f in zip(coeffs, self.basis):
            c = int(c)
            if c:
                k = RationalFunction.const(F, c)
                out = [a + k * b for a, b in zip(out, f)]
        return tuple(out)


def pole_bounds(g: AdelicMatrix) -> list[Divisor]:
    """Divisors C_j with H^0(F, g) inside the direct sum of the L(C_j).

    From g_p f = y integral, f_j = sum_k (g_p^-1)_jk y_k, so v_p(f_j) is at
    least the smallest valuation m_p in row j of g_p^-1. Away from the support
    the components are integral.
    """
    F = g.F
    out = []
    inverses = {p: mat_inv(m) for p, m in g.items()}
    for j in range(g.r):
        terms = []
        for p, inv in inverses.items():
            m_p = min(valuation(e, p) for e in inv[j])
            terms.append((p, -m_p))
        out.append(Divisor(F, terms))
    return out


def ambient_basis(g: AdelicMatrix):
    """List of (component j, function) spanning the direct sum of the L(C_j)."""
    out = []
    for j, C in enumerate(pole_bounds(g)):
        out.extend((j, f) for f in riemann_roch_basis(C))
    return out


def _integrality_rows(terms, p: Place, F):
    """Linear conditions on c making sum_k c_k * terms[k] integral at p.

    The terms are brought to a common denominator P^s * B with B prime to P;
    integrality then says P^s divides the numerator combination (finite p), or
    the numerator combination has degree at most that of the denominator (p
    at infinity).
    """
    nonzero = [t for t in terms if not t.is_zero()]
    if not nonzero:
        return []
    if p.is_infinite:
        if all(t.num.degree <= t.den.degree for t in nonzero):
            return []
        den = Poly.const(F, 1)
        for t in nonzero:
            den = den * t.den.exact_div(den.gcd(t.den))
        nums = [(t.num * den.exact_div(t.den)) if not t.is_zero() else Poly.const(F, 0) for t in terms]
        top = max(n.degree for n in nums)
        lo = den.degree + 1
        if top < lo:
            return []
        rows = np.zeros((top - lo + 1, len(terms)), dtype=np.int64)
        for k, n in enumerate(nums):
            for e in range(lo, n.degree + 1):
                rows[e - lo, k] = n.c[e]
        return rows
    P = p.poly
    s = max(t.den.multiplicity(P)[0] for t in nonzero)
    if s == 0:
        return []
    mod = P ** s
    width = mod.degree
    rows = np.zeros((width, len(terms)), dtype=np.int64)
    for k, t in enumerate(terms):
        if t.is_zero():
            continue
        vd, b = t.den.multiplicity(P)
        # t = num / (P^vd * b): scale to denominator P^s, the unit b^-1 taken mod P^s
        w = (t.num * P ** (s - vd) * b.inverse_mod(mod)) % mod
        for e, c in enumerate(w.c):
            rows[e, k] = c
    return rows


def constraint_matrix(g: AdelicMatrix, ambient=None) -> np.ndarray:
    F = g.F
    if ambient is None:
        ambient = ambient_basis(g)
    blocks = []
    zero = RationalFunction.zero(F)
    for p, m in g.items():
        for i in range(g.r):
            terms = [m[i][j] * f if not m[i][j].is_zero() else zero for j, f in ambient]
            rows = _integrality_rows(terms, p, F)
            if len(rows):
                blocks.append(rows)
    if not blocks:
        return np.zeros((0, len(ambient)), dtype=np.int64)
    return np.concatenate(blocks, axis=0)


def h0_basis(g: AdelicMatrix) -> SectionSpace:
    """Exact basis of H^0(F, g) = {f in F^r : g_p f integral at every place p}."""
    F = g.F
    ambient = ambient_basis(g)
    if not ambient:
        return SectionSpace(g, [], ambient, np.zeros((0, 0), dtype=np.int64))
    A = constraint_matrix(g, ambient)
    null = linalg.nullspace(F, A, len(ambient))
    basis = []
    for vec in null:
        comps = [RationalFunction.zero(F)] * g.r
        for c, (j, f) in zip(vec, ambient):
            c = int(c)
            if c:
                comps[j] = comps[j] + RationalFunction.const(F, c) * f
        basis.append(tuple(comps))
    return SectionSpace(g, basis, ambient, null)


def h0(g: AdelicMatrix) -> int:
    ambient = ambient_basis(g)
    if not ambient:
        return 0
    A = constraint_matrix(g, ambient)
    return len(ambient) - (linalg.rank(g.F, A) if A.size else 0)


def is_section(g: AdelicMatrix, f) -> bool:
    """Membership predicate for H^0(F, g), checked place by place."""
    F = g.F
    support = set(g.places)
    for p, m in g.items():
        for i in range(g.r):
            acc = RationalFunction.zero(F)
            for j in range(g.r):
                acc = acc + m[i][j] * f[j]
            if valuation(acc, p) < 0:
                return False
    inf = Place.infinity(F)
    for fj in f:
        if fj.is_zero():
            continue
        for q, _ in fj.den.factor():
            if Place(F, q) not in support:
                return False
        if inf not in support and valuation(fj, inf) < 0:
            return False
    return True


def h1_dim(g: AdelicMatrix, w0: Differential | None = None) -> int:
    """h^1(F, g) computed as h^0 of the Serre dual."""
    if w0 is None:
        w0 = Differential(RationalFunction.one(g.F))
    return h0(serre_dual(g, w0))


def euler_char(g: AdelicMatrix, w0: Differential | None = None, genus: int = 0) -> int:
    """h^0 - h^1, checked against the Riemann-Roch value deg g - r (genus - 1)."""
    if genus != ProjectiveLine.genus:
        raise GenusError("only the projective line is implemented")
    chi = h0(g) - h1_dim(g, w0)
    expected = degree(g) - g.r * (genus - 1)
    if chi != expected:
        raise AssertionError(f"Riemann-Roch failed: h0 - h1 = {chi}, deg g + r = {expected}")
    return chi


def twist_at_infinity(g: AdelicMatrix, m: int) -> AdelicMatrix:
    inf = Place.infinity(g.F)
    return idele_of_divisor(Divisor.of_place(inf, m), g.r) * g


def splitting_type(g: AdelicMatrix, genus: int = 0) -> tuple:
    """(a_1 >= ... >= a_r) with g of the class of O(a_1) + ... + O(a_r).

    Uses h^0(g twisted by m*inf) = sum_i max(0, a_i + m + 1); the first
    difference in m counts the a_i >= -m. The sweep widens until the profile
    is flat on both sides, so no a priori bound on the spread is needed.
    """
    if genus != ProjectiveLine.genus:
        raise GenusError("splitting type is only defined here for the projective line")
    r = g.r

    @lru_cache(maxsize=None)
    def h(m):
        return h0(twist_at_infinity(g, m))

    def dh(m):
        return h(m) - h(m - 1)

    m0 = -math.floor(Fraction(degree(g), r))
    hi = m0
    while dh(hi) < r:
        hi += 1
    lo = m0
    while h(lo - 1) > 0:
        lo -= 1
    out = []
    prev = 0
    for m in range(lo, hi + 1):
        cur = dh(m)
        out.extend([-m] * (cur - prev))
        prev = cur
    if len(out) != r:
        raise ProfileError(f"profile gives {len(out)} summands for rank {r}")
    out = tuple(sorted(out, reverse=True))
    for m in range(lo - 1, hi + 1):
        if h(m) != sum(max(0, a + m + 1) for a in out):
            raise ProfileError(f"h0 profile inconsistent at m = {m}")
    if sum(out) != degree(g):
        raise ProfileError("splitting type does not sum to the degree")
    return out


def is_semistable(g: AdelicMatrix, genus: int = 0) -> tuple[bool, Fraction]:
    """(semistable?, slope). On P^1 semistable means a constant splitting type."""
    t = splitting_type(g, genus)
    return len(set(t)) == 1, Fraction(degree(g), g.r)
