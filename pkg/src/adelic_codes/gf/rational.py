"""Rational functions F_q(x) in lowest terms with monic denominator."""

from __future__ import annotations

from .field import Field
from .poly import Poly


class RationalFunction:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        F = num.F
        if den is None:
            den = Poly.const(F, 1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if not num:
                den = Poly.const(F, 1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lead = den.lc
                if lead != 1:
                    inv = F.inv[lead]
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, F: Field, a: int) -> "RationalFunction":
        return cls(Poly.const(F, a), reduced=True)

    @classmethod
    def x(cls, F: Field) -> "RationalFunction":
        return cls(Poly.x(F), reduced=True)

    @classmethod
    def zero(cls, F: Field) -> "RationalFunction":
        return cls.const(F, 0)

    @classmethod
    def one(cls, F: Field) -> "RationalFunction":
        return cls.const(F, 1)

    @property
    def F(self) -> Field:
        return self.num.F

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other, reduced=True)
        if isinstance(other, int):
            return RationalFunction.const(self.F, self.F(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

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
        if not self.num or not other.num:
            return RationalFunction.zero(self.F)
        # cross-cancel before multiplying keeps the result reduced
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num.exact_div(g1), other.den.exact_div(g1))
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num.exact_div(g2), self.den.exact_div(g2))
        num, den = n1 * n2, d1 * d2
        lead = den.lc
        if lead != 1:
            inv = self.F.inv[lead]
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunction(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num.c, self.den.c))
        return self._hash

    def format(self) -> str:
        num = self.num.format()
        if self.den.is_one():
            return num
        den = self.den.format()
        if "+" in num:
            num = f"({num})"
        if "+" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()})"
