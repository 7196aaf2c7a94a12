"""Univariate polynomials over F_q, with gcd, modular arithmetic and factorization."""

from __future__ import annotations

import random

from .field import Field


class Poly:
    """Immutable polynomial; ``c`` holds coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("F", "c", "_hash")

    def __init__(self, F: Field, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.F = F
        self.c = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, F, c):
        obj = cls.__new__(cls)
        obj.F = F
        obj.c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, F: Field, a: int) -> "Poly":
        return cls._raw(F, (a,) if a else ())

    @classmethod
    def x(cls, F: Field) -> "Poly":
        return cls._raw(F, (0, 1))

    @classmethod
    def monomial(cls, F: Field, k: int, a: int = 1) -> "Poly":
        return cls._raw(F, (0,) * k + (a,)) if a else cls._raw(F, ())

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c and (self.F is other.F or self.F == other.F)
        if isinstance(other, int):
            return self.c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __repr__(self):
        return f"Poly({self.format()})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        F = self.F
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            coef = F.format_element(a)
            if i > 0 and "+" in coef:
                coef = f"({coef})"
            if i == 0:
                terms.append(coef)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if a == 1 else f"{coef}*{mono}")
        return "+".join(terms)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(self.F, self.F(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.F.add
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = add[out[i]][y]
        return Poly(self.F, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.F.neg
        return Poly._raw(self.F, tuple(neg[a] for a in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.F, _mul(self.F, self.c, other.c))

    __rmul__ = __mul__

    def scale(self, a: int) -> "Poly":
        if not a:
            return Poly._raw(self.F, ())
        row = self.F.mul[a]
        return Poly._raw(self.F, tuple(row[x] for x in self.c))

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0)."""
        if not self.c or k == 0:
            return self
        return Poly._raw(self.F, (0,) * k + self.c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.F, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly"):
        q, r = _divmod(self.F, self.c, other.c)
        return Poly._raw(self.F, q), Poly._raw(self.F, r)

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        other = self._coerce(other)
        return Poly._raw(self.F, _divmod(self.F, self.c, other.c)[1])

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self.c or self.c[-1] == 1:
            return self
        return self.scale(self.F.inv[self.c[-1]])

    def __call__(self, a: int) -> int:
        """Evaluate at a base-field element (Horner)."""
        add, mul = self.F.add, self.F.mul
        acc = 0
        for coef in reversed(self.c):
            acc = add[mul[acc][a]][coef]
        return acc

    def derivative(self) -> "Poly":
        F = self.F
        return Poly(F, [F.mul[F(i)][a] for i, a in enumerate(self.c)][1:])

    def reverse(self, n: int | None = None) -> "Poly":
        """x^n * self(1/x) with n = degree by default."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal length below degree")
        padded = self.c + (0,) * (n + 1 - len(self.c))
        return Poly(self.F, padded[::-1])

    def gcd(self, other: "Poly") -> "Poly":
        return Poly._raw(self.F, _gcd(self.F, self.c, other.c))

    def xgcd(self, other: "Poly"):
        """Return (g, s, t) with s*self + t*other = g monic."""
        F = self.F
        r0, r1 = self, other
        s0, s1 = Poly.const(F, 1), Poly.const(F, 0)
        t0, t1 = Poly.const(F, 0), Poly.const(F, 1)
        while r1:
            qq, rr = r0.divmod(r1)
            r0, r1 = r1, rr
            s0, s1 = s1, s0 - qq * s1
            t0, t1 = t1, t0 - qq * t1
        if not r0:
            return r0, s0, t0
        inv = F.inv[r0.lc]
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def inverse_mod(self, m: "Poly") -> "Poly":
        g, s, _ = self.xgcd(m)
        if not g.is_one():
            raise ZeroDivisionError(f"{self} is not invertible modulo {m}")
        return s % m

    def pow_mod(self, n: int, m: "Poly") -> "Poly":
        F = self.F
        result = (1,)
        base = _divmod(F, self.c, m.c)[1]
        mc = m.c
        while n:
            if n & 1:
                result = _divmod(F, _mul(F, result, base), mc)[1]
            n >>= 1
            if n:
                base = _divmod(F, _mul(F, base, base), mc)[1]
        return Poly._raw(F, _divmod(F, result, mc)[1])

    def multiplicity(self, p: "Poly") -> tuple[int, "Poly"]:
        """Largest k with p^k | self, and the cofactor (self nonzero)."""
        k = 0
        f = self
        while True:
            q, r = f.divmod(p)
            if r:
                return k, f
            f = q
            k += 1

    def sort_key(self):
        return (len(self.c), tuple(reversed(self.c)))

    # -- irreducibility and factorization ------------------------------
    def is_irreducible(self) -> bool:
        """Rabin's test."""
        n = self.degree
        if n <= 0:
            return False
        if n == 1:
            return True
        f = self.monic()
        F = self.F
        x = Poly.x(F)
        q = F.q
        if f.c[0] == 0:
            return False
        # x^(q^n) == x mod f
        h = x
        powers = {}
        for i in range(1, n + 1):
            h = h.pow_mod(q, f)
            powers[i] = h
        if powers[n] != x % f:
            return False
        for r in _prime_divisors(n):
            g = f.gcd(powers[n // r] - x)
            if not g.is_one():
                return False
        return True

    def factor(self) -> list[tuple["Poly", int]]:
        """Monic irreducible factorization as a sorted list of (factor, multiplicity)."""
        if self.degree < 1:
            return []
        f = self.monic()
        out = {}
        for g, m in _squarefree(f):
            for d, h in _distinct_degree(g):
                for irred in _equal_degree(h, d):
                    out[irred] = out.get(irred, 0) + m
        return sorted(out.items(), key=lambda kv: kv[0].sort_key())


# -- tuple-level kernels ------------------------------------------------

def _mul(F, a, b):
    if not a or not b:
        return ()
    add, mul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    add, mul, neg = F.add, F.mul, F.neg
    r = list(a)
    inv_lead = F.inv[b[-1]]
    q = [0] * (len(a) - db)
    negb = [neg[y] for y in b]
    for i in range(len(a) - 1, db - 1, -1):
        coef = r[i]
        if coef:
            c = mul[coef][inv_lead]
            q[i - db] = c
            row = mul[c]
            base = i - db
            for j in range(db):
                y = negb[j]
                if y:
                    r[base + j] = add[r[base + j]][row[y]]
            r[i] = 0
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    while q and q[-1] == 0:
        q.pop()
    return tuple(q), tuple(r)


def _gcd(F, a, b):
    while b:
        a, b = b, _divmod(F, a, b)[1]
    if not a:
        return a
    inv = F.inv[a[-1]]
    row = F.mul[inv]
    return tuple(row[x] for x in a)


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pth_root(f: Poly) -> Poly:
    F = f.F
    p = F.p
    root_exp = F.q // p  # a^(q/p) is the p-th root of a in F_q
    return Poly(F, [F.power(f.c[i], root_exp) for i in range(0, len(f.c), p)])


def _squarefree(f: Poly):
    F = f.F
    out = []
    dfx = f.derivative()
    if not dfx:
        for g, m in _squarefree(_pth_root(f)):
            out.append((g, m * F.p))
        return out
    c = f.gcd(dfx)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        for g, m in _squarefree(_pth_root(c)):
            out.append((g, m * F.p))
    return out


def _distinct_degree(f: Poly):
    F = f.F
    x = Poly.x(F)
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(F.q, f)
        g = f.gcd(h - x)
        if not g.is_one():
            out.append((d, g))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def _equal_degree(f: Poly, d: int):
    """Cantor-Zassenhaus splitting of a squarefree product of degree-d irreducibles."""
    if f.degree == d:
        return [f.monic()]
    F = f.F
    rng = random.Random(f.degree * 7919 + d)
    while True:
        a = Poly(F, [rng.randrange(F.q) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(e*d - 1))
            t = a % f
            acc = t
            for _ in range(F.e * d - 1):
                t = t.pow_mod(2, f)
                acc = acc + t
            b = acc
        else:
            b = a.pow_mod((F.q ** d - 1) // 2, f) - 1
        g = f.gcd(b)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f.exact_div(g), d)


def monic_polys(F: Field, d: int):
    """Monic degree-d polynomials over F in index order."""
    for idx in range(F.q ** d):
        coeffs = []
        for _ in range(d):
            coeffs.append(idx % F.q)
            idx //= F.q
        yield Poly(F, coeffs + [1])


def irreducibles(F: Field, d: int):
    return [f for f in monic_polys(F, d) if f.is_irreducible()]
