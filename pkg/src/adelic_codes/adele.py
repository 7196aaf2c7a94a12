"""Finite-support elements of GL_r over the adeles of F_q(x).

An AdelicMatrix g stores an invertible r x r matrix g_p of rational functions
for finitely many places p and is the identity everywhere else. The lattice
it describes is {a : g_p a_p integral at every p}; left multiplication by
GL_r(O_p) and right multiplication by GL_r(F) do not change its isomorphism
class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .curve import Differential, Divisor, Place, check_rational_divisor, residue, valuation
from .gf import Field, LaurentSeries, PrecisionError, RationalFunction, laurent_expand

# -- small dense matrices over F_q(x) --------------------------------------


def identity(F: Field, r: int):
    one, zero = RationalFunction.one(F), RationalFunction.zero(F)
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def is_identity(m) -> bool:
    return all((e.is_one() if i == j else e.is_zero()) for i, row in enumerate(m) for j, e in enumerate(row))


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    return tuple(sum((a[i][j] * v[j] for j in range(1, len(v))), a[i][0] * v[0]) for i in range(len(a)))


def transpose(a):
    return tuple(zip(*a))


def scalar_mat(c: RationalFunction, r: int):
    zero = RationalFunction.zero(c.F)
    return tuple(tuple(c if i == j else zero for j in range(r)) for i in range(r))


def mat_scale(c: RationalFunction, a):
    return tuple(tuple(c * e for e in row) for row in a)


def det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    # Gaussian elimination with exact rational functions
    m = [list(row) for row in a]
    F = a[0][0].F
    d = RationalFunction.one(F)
    for c in range(n):
        p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if p is None:
            return RationalFunction.zero(F)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c].is_zero():
                continue
            f = m[i][c] * inv
            m[i] = [m[i][j] - f * m[c][j] for j in range(n)]
    return d


def mat_inv(a):
    n = len(a)
    F = a[0][0].F
    one, zero = RationalFunction.one(F), RationalFunction.zero(F)
    m = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        inv = m[c][c].inverse()
        m[c] = [e * inv for e in m[c]]
        for i in range(n):
            if i != c and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [m[i][j] - f * m[c][j] for j in range(2 * n)]
    return tuple(tuple(row[n:]) for row in m)


def format_matrix(a) -> str:
    return "[" + ",".join("[" + ",".join(e.format() for e in row) + "]" for row in a) + "]"


def _freeze(m):
    return tuple(tuple(row) for row in m)


# -- adelic matrices -------------------------------------------------------


class AdelicMatrix:
    __slots__ = ("F", "r", "_support", "_hash")

    def __init__(self, F: Field, r: int, support=None, *, check=True):
        if r < 1:
            raise ValueError("rank must be positive")
        items = {}
        for p, m in (support.items() if isinstance(support, dict) else support or ()):
            m = _freeze(m)
            if len(m) != r or any(len(row) != r for row in m):
                raise ValueError(f"local matrix at {p} is not {r}x{r}")
            if p in items:
                raise ValueError(f"place {p} given twice")
            if check and det(m).is_zero():
                raise ValueError(f"local matrix at {p} is singular")
            if not is_identity(m):
                items[p] = m
        self.F = F
        self.r = r
        self._support = dict(sorted(items.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = None

    @classmethod
    def identity(cls, F: Field, r: int) -> "AdelicMatrix":
        return cls(F, r)

    @classmethod
    def diagonal(cls, blocks) -> "AdelicMatrix":
        """Block-diagonal sum of rank-one (or higher) adelic matrices."""
        blocks = list(blocks)
        F = blocks[0].F
        r = sum(b.r for b in blocks)
        places = sorted({p for b in blocks for p in b.places}, key=Place.sort_key)
        zero = RationalFunction.zero(F)
        support = {}
        for p in places:
            m = [[zero] * r for _ in range(r)]
            off = 0
            for b in blocks:
                loc = b.local(p)
                for i in range(b.r):
                    for j in range(b.r):
                        m[off + i][off + j] = loc[i][j]
                off += b.r
            support[p] = m
        return cls(F, r, support)

    @property
    def places(self):
        return list(self._support)

    @property
    def support(self):
        return dict(self._support)

    def local(self, p: Place):
        m = self._support.get(p)
        return m if m is not None else identity(self.F, self.r)

    def items(self):
        return self._support.items()

    @property
    def degree(self) -> int:
        return degree(self)

    def __mul__(self, other: "AdelicMatrix") -> "AdelicMatrix":
        if other.r != self.r:
            raise ValueError("rank mismatch")
        places = set(self._support) | set(other._support)
        return AdelicMatrix(self.F, self.r, {p: mat_mul(self.local(p), other.local(p)) for p in places}, check=False)

    def inverse(self) -> "AdelicMatrix":
        return AdelicMatrix(self.F, self.r, {p: mat_inv(m) for p, m in self._support.items()}, check=False)

    def transpose(self) -> "AdelicMatrix":
        return AdelicMatrix(self.F, self.r, {p: transpose(m) for p, m in self._support.items()}, check=False)

    def apply_global(self, gamma) -> "AdelicMatrix":
        """The canonical representative of g * gamma for a global gamma in GL_r(F).

        gamma is integral and unimodular at all but finitely many places; there
        a left factor gamma^-1 in GL_r(O_p) brings the component back to the
        identity, so only the support of g and the bad places of gamma remain.
        """
        gamma = _freeze(gamma)
        places = set(self._support) | set(bad_places(gamma))
        return AdelicMatrix(self.F, self.r, {p: mat_mul(self.local(p), gamma) for p in places})

    def apply_local(self, p: Place, k) -> "AdelicMatrix":
        """Replace g_p by k * g_p (k should lie in GL_r(O_p) to preserve the class)."""
        sup = dict(self._support)
        sup[p] = mat_mul(_freeze(k), self.local(p))
        return AdelicMatrix(self.F, self.r, sup)

    def __eq__(self, other):
        return (
            isinstance(other, AdelicMatrix)
            and self.r == other.r
            and self.F == other.F
            and self._support == other._support
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.r, tuple(self._support.items())))
        return self._hash

    def format(self) -> str:
        if not self._support:
            return f"rank {self.r} identity"
        return "; ".join(f"{p.format()}: {format_matrix(m)}" for p, m in self._support.items())

    def __repr__(self):
        return f"AdelicMatrix(r={self.r}, {self.format()})"


def is_local_unit_matrix(m, p: Place) -> bool:
    """m in GL_r(O_p): integral entries and a unit determinant."""
    if any(valuation(e, p) < 0 for row in m for e in row):
        return False
    return valuation(det(m), p) == 0


def bad_places(gamma):
    """Places where a global matrix fails to lie in GL_r(O_p)."""
    F = gamma[0][0].F
    cands = set()
    for row in gamma:
        for e in row:
            if not e.is_zero():
                cands.update(g for g, _ in e.den.factor())
    d = det(gamma)
    if d.is_zero():
        raise ValueError("global matrix is singular")
    cands.update(g for g, _ in d.num.factor())
    cands.update(g for g, _ in d.den.factor())
    places = [Place(F, g) for g in cands] + [Place.infinity(F)]
    return sorted((p for p in places if not is_local_unit_matrix(gamma, p)), key=Place.sort_key)


# -- ideles and twists -----------------------------------------------------


def idele_of_divisor(E: Divisor, r: int = 1) -> AdelicMatrix:
    """iota_E * Id: the local component at p is pi_p^(ord_p E) times the identity."""
    F = E.F
    return AdelicMatrix(F, r, {p: scalar_mat(p.uniformizer ** c, r) for p, c in E.items()})


def degree(g: AdelicMatrix) -> int:
    return sum(valuation(det(m), p) * p.degree for p, m in g.items())


def twist_by_divisor(g: AdelicMatrix, E: Divisor, sign: int = 1) -> AdelicMatrix:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = idele_of_divisor(E * sign, g.r) * g
    assert degree(out) == degree(g) + sign * g.r * E.degree
    return out


def serre_dual(g: AdelicMatrix, w0: Differential) -> AdelicMatrix:
    """iota_(w0) * g^-T: the lattice dual to that of g under sum_i res(a_i b_i w0).

    The transpose makes the construction compatible with the left O / right F
    equivalence; for rank one and symmetric local matrices it is just g^-1.
    """
    out = idele_of_divisor(w0.divisor(), g.r) * g.inverse().transpose()
    assert degree(out) == -2 * g.r - degree(g)
    return out


def is_balanced(g: AdelicMatrix, D: Divisor) -> bool:
    """All multiple orders vanish at the points of D, i.e. g_p lies in GL_r(O_p) there."""
    return all(is_local_unit_matrix(g.local(p), p) for p in D.support)


def omega_dual_matrix(g: AdelicMatrix, w0: Differential, D: Divisor) -> AdelicMatrix:
    """iota_((w0)+D) * g^-T; its F-code is the differential code of (D, g)."""
    check_rational_divisor(D)
    if not is_balanced(g, D):
        raise ValueError("g is not balanced along D")
    for p in D.support:
        if valuation(w0.h, p) != -1:
            raise ValueError(f"omega_0 is not D-special at {p}")
        if residue(w0, p) != 1:
            raise ValueError(f"omega_0 does not have residue 1 at {p}")
    out = idele_of_divisor(w0.divisor() + D, g.r) * g.inverse().transpose()
    assert is_balanced(out, D)
    return out


# -- local Smith form ------------------------------------------------------


@dataclass(frozen=True)
class LocalSmithForm:
    """M * g_p * N = diag(u^n_1, ..., u^n_r) with M, N in GL_r(O_p) and u the uniformizer used."""

    place: Place
    orders: tuple
    M: tuple
    N: tuple
    g: tuple
    uniformizer: RationalFunction
    precision: int

    def diagonal(self):
        F = self.place.F
        zero = RationalFunction.zero(F)
        return tuple(
            tuple(self.uniformizer ** n if i == j else zero for j in range(len(self.orders)))
            for i, n in enumerate(self.orders)
        )

    def check_exact(self) -> bool:
        return mat_mul(mat_mul(self.M, self.g), self.N) == self.diagonal()

    def series(self, m, precision=None):
        """Entrywise Laurent expansions of a matrix at the home place."""
        N = precision or self.precision
        return [[laurent_expand(e, self.place, N) for e in row] for row in m]

    def check_series(self, precision: int | None = None, max_doublings: int = 3) -> bool:
        """Verify M g N = diag(u^n_j) on truncated expansions, modulo pi^(max n + precision).

        Expansion precision starts at 2 * spread + 4 (spread being the largest
        absolute entry valuation) and is doubled on exhaustion.
        """
        target_prec = precision or self.precision
        bound = max(self.orders) + target_prec
        spread = 0
        for m in (self.M, self.g, self.N):
            for row in m:
                for e in row:
                    if not e.is_zero():
                        spread = max(spread, abs(valuation(e, self.place)))
        rel = max(2 * spread + 4, target_prec)
        for _ in range(max_doublings + 1):
            prod = _series_product(self.series(self.M, rel), self.series(self.g, rel), self.series(self.N, rel))
            diag = self.series(self.diagonal(), rel)
            if all(prod[i][j].absolute_precision >= bound for i in range(len(prod)) for j in range(len(prod))):
                for i, row in enumerate(prod):
                    for j, s in enumerate(row):
                        t = diag[i][j]
                        low = min(_low(s), _low(t))
                        if low == math.inf:
                            continue
                        for k in range(low, bound):
                            if s.coefficient(k) != t.coefficient(k):
                                return False
                return True
            rel *= 2
        raise PrecisionError(f"could not reach precision {target_prec} at {self.place}")


def _low(s: LaurentSeries):
    return s.offset if not s.is_zero else math.inf


def _series_product(a, b, c):
    def mm(x, y):
        n = len(x)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = x[i][0] * y[0][j]
                for t in range(1, n):
                    acc = acc + x[i][t] * y[t][j]
                row.append(acc)
            out.append(row)
        return out

    # zero-series products carry an absolute precision; mm's min rule keeps it honest
    return mm(mm(a, b), c)


def local_smith_form(g, p: Place, precision: int = 8, uniformizer: RationalFunction | None = None) -> LocalSmithForm:
    """Smith form of g_p over the valuation ring at p, by pivoting on minimal valuation.

    ``g`` may be an AdelicMatrix or a bare local matrix. The elimination is
    carried out exactly on rational functions; every multiplier has
    nonnegative valuation, so M and N lie in GL_r(O_p). An alternative
    uniformizer (a unit times pi) only changes the final unit normalization.
    """
    m = g.local(p) if isinstance(g, AdelicMatrix) else _freeze(g)
    r = len(m)
    F = p.F
    u = uniformizer if uniformizer is not None else p.uniformizer
    if valuation(u, p) != 1:
        raise ValueError("uniformizer must have valuation one")
    A = [list(row) for row in m]
    M = [list(row) for row in identity(F, r)]
    N = [list(row) for row in identity(F, r)]
    for s in range(r):
        best, bi, bj = math.inf, -1, -1
        for i in range(s, r):
            for j in range(s, r):
                v = valuation(A[i][j], p)
                if v < best:
                    best, bi, bj = v, i, j
        if bi < 0:
            raise ValueError("singular local matrix")
        A[s], A[bi] = A[bi], A[s]
        M[s], M[bi] = M[bi], M[s]
        for row in A:
            row[s], row[bj] = row[bj], row[s]
        for row in N:
            row[s], row[bj] = row[bj], row[s]
        inv = A[s][s].inverse()
        for i in range(s + 1, r):
            if A[i][s].is_zero():
                continue
            f = A[i][s] * inv
            A[i] = [A[i][j] - f * A[s][j] for j in range(r)]
            M[i] = [M[i][j] - f * M[s][j] for j in range(r)]
        for j in range(s + 1, r):
            if A[s][j].is_zero():
                continue
            f = A[s][j] * inv
            for row in A:
                row[j] = row[j] - f * row[s]
            for row in N:
                row[j] = row[j] - f * row[s]
    orders = []
    for s in range(r):
        n = valuation(A[s][s], p)
        unit = A[s][s] / (u ** n)
        M[s] = [e / unit for e in M[s]]
        orders.append(n)
    out = LocalSmithForm(p, tuple(orders), _freeze(M), _freeze(N), m, u, precision)
    assert list(out.orders) == sorted(out.orders)
    assert sum(out.orders) == valuation(det(m), p)
    return out


def multiple_orders(g, p: Place) -> tuple:
    orders = local_smith_form(g, p).orders
    m = g.local(p) if isinstance(g, AdelicMatrix) else g
    assert sum(orders) == valuation(det(m), p)
    return orders


def determinantal_orders(m, p: Place) -> tuple:
    """Orders from the minimal valuations of k x k minors (an independent route)."""
    r = len(m)
    prev = 0
    out = []
    for k in range(1, r + 1):
        best = math.inf
        for rows in combinations(range(r), k):
            for cols in combinations(range(r), k):
                minor = det(tuple(tuple(m[i][j] for j in cols) for i in rows))
                best = min(best, valuation(minor, p))
        out.append(best - prev)
        prev = best
    return tuple(out)


def permutation_matrix(F: Field, perm):
    one, zero = RationalFunction.one(F), RationalFunction.zero(F)
    r = len(perm)
    return tuple(tuple(one if perm[i] == j else zero for j in range(r)) for i in range(r))


__all__ = [
    "AdelicMatrix",
    "LocalSmithForm",
    "bad_places",
    "degree",
    "det",
    "determinantal_orders",
    "idele_of_divisor",
    "is_balanced",
    "is_local_unit_matrix",
    "local_smith_form",
    "mat_inv",
    "mat_mul",
    "multiple_orders",
    "omega_dual_matrix",
    "permutation_matrix",
    "serre_dual",
    "transpose",
    "twist_by_divisor",
]
