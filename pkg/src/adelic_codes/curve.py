"""The projective line over F_q: places, divisors, Riemann-Roch spaces, differentials.

This is the only curve backend. The functions here (valuation, evaluate,
riemann_roch_basis, differentials and residues) form the narrow interface the
rest of the package relies on, so a positive-genus backend would only have to
provide the same surface.
"""

from __future__ import annotations

import math
import re
from functools import cached_property

from .gf import Field, ParseError, Poly, RationalFunction, laurent_expand, parse_poly


class PoleError(ValueError):
    """Evaluation at a place where the function has a pole."""


class Place:
    """A closed point of P^1: a monic irreducible polynomial, or infinity."""

    __slots__ = ("F", "poly", "_key", "__dict__")

    def __init__(self, F: Field, poly: Poly | None):
        if poly is not None:
            if poly.degree < 1:
                raise ValueError("a finite place needs a polynomial of positive degree")
            poly = poly.monic()
            if poly.degree > 1 and not poly.is_irreducible():
                raise ValueError(f"{poly.format()} is not irreducible")
        self.F = F
        self.poly = poly
        self._key = None if poly is None else poly.c

    @classmethod
    def infinity(cls, F: Field) -> "Place":
        return cls(F, None)

    @classmethod
    def rational(cls, F: Field, a: int) -> "Place":
        """The degree-one place x - a."""
        return cls(F, Poly(F, [F.neg[a], 1]))

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @cached_property
    def chart_poly(self) -> Poly:
        """Uniformizer as a polynomial in the local chart variable (x, or t = 1/x at infinity)."""
        return Poly.x(self.F) if self.poly is None else self.poly

    @cached_property
    def uniformizer(self) -> RationalFunction:
        if self.poly is None:
            return RationalFunction(Poly.const(self.F, 1), Poly.x(self.F), reduced=True)
        return RationalFunction(self.poly, reduced=True)

    @property
    def root(self) -> int:
        """The coordinate a of a degree-one finite place x - a."""
        if self.poly is None or self.poly.degree != 1:
            raise ValueError(f"{self} is not a rational finite place")
        return self.F.neg[self.poly.c[0]]

    def local_parts(self, f: RationalFunction):
        """Write nonzero f = pi^v * a / b in chart coordinates with a, b prime to pi.

        Returns (v, a, b) with a, b polynomials in the chart variable.
        """
        if self.poly is None:
            num, den = f.num, f.den
            return den.degree - num.degree, num.reverse(), den.reverse()
        vn, a = f.num.multiplicity(self.poly)
        vd, b = f.den.multiplicity(self.poly)
        return vn - vd, a, b

    def sort_key(self):
        if self.poly is None:
            return (1, 1, ())
        if self.poly.degree == 1:
            return (0, 1, (self.root,))
        return (0, self.poly.degree, tuple(reversed(self.poly.c)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return isinstance(other, Place) and self._key == other._key and self.F == other.F

    def __hash__(self):
        return hash(("place", self._key))

    def format(self) -> str:
        return "(inf)" if self.poly is None else f"({self.poly.format()})"

    __str__ = format

    def __repr__(self):
        return f"Place{self.format()}"


def parse_place(text: str, F: Field) -> Place:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"place must be parenthesized: {text!r}", 1)
    inner = s[1:-1].strip()
    if inner in ("inf", "infinity", "oo"):
        return Place.infinity(F)
    poly = parse_poly(inner, F)
    try:
        return Place(F, poly)
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None


class Divisor:
    """Finite formal sum of places with nonzero integer coefficients."""

    __slots__ = ("F", "_terms", "_hash")

    def __init__(self, F: Field, terms=None):
        acc = {}
        for p, c in (terms.items() if isinstance(terms, dict) else terms or ()):
            acc[p] = acc.get(p, 0) + c
        self.F = F
        self._terms = tuple(sorted(((p, c) for p, c in acc.items() if c), key=lambda t: t[0].sort_key()))
        self._hash = None

    @classmethod
    def zero(cls, F: Field) -> "Divisor":
        return cls(F)

    @classmethod
    def of_place(cls, p: Place, c: int = 1) -> "Divisor":
        return cls(p.F, {p: c})

    @classmethod
    def sum_of(cls, places) -> "Divisor":
        places = list(places)
        if not places:
            raise ValueError("empty place list")
        return cls(places[0].F, [(p, 1) for p in places])

    def items(self):
        return self._terms

    @property
    def support(self):
        return [p for p, _ in self._terms]

    def __getitem__(self, p: Place) -> int:
        for q, c in self._terms:
            if q == p:
                return c
        return 0

    def __contains__(self, p):
        return any(q == p for q, _ in self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        return sum(c * p.degree for p, c in self._terms)

    def is_effective(self) -> bool:
        return all(c > 0 for _, c in self._terms)

    def __add__(self, other):
        return Divisor(self.F, list(self._terms) + list(other._terms))

    def __neg__(self):
        return Divisor(self.F, [(p, -c) for p, c in self._terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return Divisor(self.F, [(p, k * c) for p, c in self._terms])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def format(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (p, c) in enumerate(self._terms):
            sign = "-" if c < 0 else "+"
            body = f"{abs(c)}*{p.format()}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    __str__ = format

    def __repr__(self):
        return f"Divisor({self.format()})"


def parse_divisor(text: str, F: Field) -> Divisor:
    """Parse ``"2*(x) - 1*(inf) + 1*(x^2+x+1)"``; coefficients default to 1."""
    s = text
    i, n = 0, len(s)
    terms = []
    first = True
    while True:
        while i < n and s[i].isspace():
            i += 1
        if i >= n:
            break
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
            while i < n and s[i].isspace():
                i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at {s[i]!r}", i + 1)
        if first and s[i:].strip() == "0" and not terms:
            return Divisor.zero(F)
        m = re.compile(r"(\d+)\s*\*\s*").match(s, i)
        coef = 1
        if m:
            coef = int(m.group(1))
            i = m.end()
        if i >= n or s[i] != "(":
            raise ParseError("expected a parenthesized place", i + 1)
        depth, j = 0, i
        while j < n:
            if s[j] == "(":
                depth += 1
            elif s[j] == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth:
            raise ParseError("unbalanced parentheses", i + 1)
        try:
            place = parse_place(s[i:j + 1], F)
        except ParseError as exc:
            raise ParseError(exc.message, i + exc.column) from None
        terms.append((place, sign * coef))
        i = j + 1
        first = False
    if not terms:
        raise ParseError("empty divisor", 1)
    return Divisor(F, terms)


# -- functions on P^1 -----------------------------------------------------

def valuation(f: RationalFunction, p: Place):
    """ord_p(f), or math.inf for f = 0."""
    if f.is_zero():
        return math.inf
    if p.poly is None:
        return f.den.degree - f.num.degree
    return f.num.multiplicity(p.poly)[0] - f.den.multiplicity(p.poly)[0]


def evaluate(f: RationalFunction, p: Place):
    """Image of f in the residue field at p.

    For a degree-one place this is a base-field element (int); for a place of
    higher degree it is the residue polynomial modulo p.
    """
    if f.is_zero():
        return 0 if p.degree == 1 else Poly.const(f.F, 0)
    v = valuation(f, p)
    if v < 0:
        raise PoleError(f"{f} has a pole at {p}")
    if v > 0:
        return 0 if p.degree == 1 else Poly.const(f.F, 0)
    F = f.F
    if p.poly is None:
        return F.div(f.num.lc, f.den.lc)
    if p.degree == 1:
        a = p.root
        return F.div(f.num(a), f.den(a))
    P = p.poly
    return ((f.num % P) * (f.den % P).inverse_mod(P)) % P


def principal_divisor(f: RationalFunction) -> Divisor:
    if f.is_zero():
        raise ValueError("the zero function has no divisor")
    F = f.F
    terms = [(Place(F, g), m) for g, m in f.num.factor()]
    terms += [(Place(F, g), -m) for g, m in f.den.factor()]
    terms.append((Place.infinity(F), f.den.degree - f.num.degree))
    return Divisor(F, terms)


def riemann_roch_basis(E: Divisor) -> list[RationalFunction]:
    """F_q-basis of L(E) = {f : (f) + E >= 0}, as x^k * N / P for k = 0..deg E."""
    F = E.F
    d = E.degree
    if d < 0:
        return []
    N = Poly.const(F, 1)
    P = Poly.const(F, 1)
    for p, c in E.items():
        if p.is_infinite:
            continue
        if c > 0:
            P = P * p.poly ** c
        else:
            N = N * p.poly ** (-c)
    return [RationalFunction(N.shift(k), P) for k in range(d + 1)]


class ProjectiveLine:
    """P^1 over F_q; genus 0."""

    genus = 0

    def __init__(self, F: Field):
        self.F = F

    def rational_places(self, include_infinity=False):
        out = [Place.rational(self.F, a) for a in range(self.F.q)]
        if include_infinity:
            out.append(Place.infinity(self.F))
        return out

    def places_of_degree(self, d: int):
        from .gf import irreducibles
        return [Place(self.F, g) for g in irreducibles(self.F, d)]


# -- differentials --------------------------------------------------------

class Differential:
    """omega = h dx."""

    __slots__ = ("h", "_divisor")

    def __init__(self, h: RationalFunction):
        self.h = h
        self._divisor = None
        if not h.is_zero() and self.divisor().degree != 2 * ProjectiveLine.genus - 2:
            raise AssertionError("differential divisor has wrong degree")  # pragma: no cover

    @property
    def F(self):
        return self.h.F

    def is_zero(self):
        return self.h.is_zero()

    def divisor(self) -> Divisor:
        if self.h.is_zero():
            raise ValueError("the zero differential has no divisor")
        if self._divisor is None:
            self._divisor = principal_divisor(self.h) + Divisor.of_place(Place.infinity(self.F), -2)
        return self._divisor

    def __mul__(self, f: RationalFunction) -> "Differential":
        return Differential(self.h * f)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Differential) and self.h == other.h

    def __hash__(self):
        return hash(("dx", self.h))

    def format(self) -> str:
        body = self.h.format()
        return f"({body})*dx"

    __str__ = format

    def __repr__(self):
        return f"Differential({self.format()})"


def differential_divisor(w: Differential) -> Divisor:
    return w.divisor()


def differential_valuation(w: Differential, p: Place):
    """ord_p(omega): ord_p(h), shifted by -2 at infinity since dx = -t^-2 dt."""
    v = valuation(w.h, p)
    return v - 2 if p.is_infinite else v


def residue(w: Differential, p: Place) -> int:
    """Coefficient of pi^-1 in the expansion of omega at a degree-one place."""
    if p.degree != 1:
        raise ValueError(f"residues are only supported at degree-one places, not {p}")
    F = w.F
    h = w.h
    if h.is_zero():
        return 0
    if p.is_infinite:
        # h(x) dx = -h(1/t) t^-2 dt: the residue is minus the t^1 coefficient of h(1/t)
        v = valuation(h, p)
        if v > 1:
            return 0
        s = laurent_expand(h, p, 2 - v)
        return F.neg[s.coefficient(1).c[0] if s.coefficient(1) else 0]
    v = valuation(h, p)
    if v >= 0:
        return 0
    s = laurent_expand(h, p, -v)
    c = s.coefficient(-1)
    return c.c[0] if c else 0


def d_special_differential(D: Divisor) -> Differential:
    """omega_0 = sum 1/(x - a_i) dx, with a simple pole and residue 1 at every point of D."""
    F = D.F
    places = check_rational_divisor(D)
    if not places:
        raise ValueError("D is empty")
    h = RationalFunction.zero(F)
    for p in places:
        h = h + RationalFunction(Poly.const(F, 1), p.poly, reduced=True)
    w = Differential(h)
    for p in places:
        if valuation(h, p) != -1 or residue(w, p) != 1:
            raise AssertionError(f"omega_0 is not D-special at {p}")  # pragma: no cover
    return w


def check_rational_divisor(D: Divisor) -> list[Place]:
    """Validate that D is a sum of distinct finite degree-one places; return them in order."""
    out = []
    for p, c in D.items():
        if p.is_infinite:
            raise ValueError("D may not contain the place at infinity")
        if p.degree != 1:
            raise ValueError(f"D must consist of rational places; {p} has degree {p.degree}")
        if c != 1:
            raise ValueError(f"repeated place {p} in D (coefficient {c})")
        out.append(p)
    return out
