"""Truncated Laurent expansions at a place of F_q(x).

A nonzero series is stored as ``pi^v * u`` with ``u`` a unit known modulo
``P^N``; here ``P`` is the place's chart polynomial (the monic irreducible
itself for a finite place, the chart variable ``t = 1/x`` at infinity) and
``N`` the relative precision. The residue-field coefficients are the P-adic
digits of ``u``: polynomials of degree < deg P.

Precision rules: a sum is known to the smaller absolute precision of its
operands, a product to the smaller relative precision, an inverse to the same
relative precision. Cancellation down to nothing yields a zero known only to
some absolute precision; asking for its leading term raises PrecisionError.
"""

from __future__ import annotations

import math

from .poly import Poly


class PrecisionError(ArithmeticError):
    """Raised when a result would depend on coefficients beyond the known precision."""


class LaurentSeries:
    __slots__ = ("place", "is_zero", "_offset", "precision", "mantissa", "_abs")

    def __init__(self, place, offset, mantissa: Poly | None, precision: int, *, zero_abs=None):
        self.place = place
        if mantissa is None:
            self.is_zero = True
            self._offset = None
            self.precision = 0
            self.mantissa = None
            self._abs = zero_abs
        else:
            if precision < 1:
                raise PrecisionError("nonzero series needs precision >= 1")
            self.is_zero = False
            self._offset = offset
            self.precision = precision
            self.mantissa = mantissa
            self._abs = offset + precision

    # -- construction --------------------------------------------------
    @classmethod
    def zero(cls, place, absolute_precision=math.inf):
        return cls(place, None, None, 0, zero_abs=absolute_precision)

    @classmethod
    def _normalize(cls, place, offset, value: Poly, abs_prec):
        """Build pi^offset * value known modulo pi^abs_prec, stripping powers of P."""
        P = place.chart_poly
        rel = abs_prec - offset
        if rel <= 0:
            return cls.zero(place, abs_prec)
        value = value % _power(P, rel)
        if not value:
            return cls.zero(place, abs_prec)
        k, value = value.multiplicity(P)
        offset += k
        rel -= k
        return cls(place, offset, value % _power(P, rel), rel)

    # -- properties ----------------------------------------------------
    @property
    def offset(self):
        """Valuation of the series; math.inf for the zero series."""
        return math.inf if self.is_zero else self._offset

    @property
    def absolute_precision(self):
        return self._abs

    @property
    def F(self):
        return self.place.F

    def digits(self):
        """Residue-field coefficients of pi^offset, ..., pi^(offset+N-1)."""
        if self.is_zero:
            return ()
        P = self.place.chart_poly
        out = []
        u = self.mantissa
        for _ in range(self.precision):
            u, d = u.divmod(P)
            out.append(d)
        return tuple(out)

    def coefficient(self, k: int) -> Poly:
        F = self.place.F
        if k >= self._abs:
            raise PrecisionError(f"coefficient {k} lies beyond absolute precision {self._abs}")
        if self.is_zero or k < self._offset:
            return Poly.const(F, 0)
        return self.digits()[k - self._offset]

    def leading_coefficient(self) -> Poly:
        if self.is_zero:
            raise PrecisionError("zero series has no leading coefficient")
        return self.mantissa % self.place.chart_poly

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if other.place != self.place:
            raise ValueError("series at different places")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        abs_prec = min(self._abs, other._abs)
        if self.is_zero and other.is_zero:
            return LaurentSeries.zero(self.place, abs_prec)
        if self.is_zero:
            return other._truncate_abs(abs_prec)
        if other.is_zero:
            return self._truncate_abs(abs_prec)
        v = min(self._offset, other._offset)
        P = self.place.chart_poly
        total = self.mantissa * _power(P, self._offset - v) + other.mantissa * _power(P, other._offset - v)
        return LaurentSeries._normalize(self.place, v, total, abs_prec)

    def __neg__(self):
        if self.is_zero:
            return self
        return LaurentSeries(self.place, self._offset, -self.mantissa, self.precision)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            if self.is_zero and other.is_zero:
                return LaurentSeries.zero(self.place, self._abs + other._abs)
            z, nz = (self, other) if self.is_zero else (other, self)
            return LaurentSeries.zero(self.place, z._abs + nz._offset)
        n = min(self.precision, other.precision)
        P = self.place.chart_poly
        u = (self.mantissa * other.mantissa) % _power(P, n)
        return LaurentSeries(self.place, self._offset + other._offset, u, n)

    def inverse(self):
        if self.is_zero:
            raise PrecisionError("cannot invert a series that is zero to known precision")
        mod = _power(self.place.chart_poly, self.precision)
        return LaurentSeries(self.place, -self._offset, self.mantissa.inverse_mod(mod), self.precision)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def _truncate_abs(self, abs_prec):
        if self.is_zero:
            return LaurentSeries.zero(self.place, min(abs_prec, self._abs))
        return LaurentSeries._normalize(self.place, self._offset, self.mantissa, min(abs_prec, self._abs))

    def truncate(self, precision: int):
        """Keep only the first ``precision`` coefficients."""
        if self.is_zero:
            return self
        return self._truncate_abs(self._offset + precision)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.place != other.place or self.is_zero != other.is_zero:
            return False
        if self.is_zero:
            return self._abs == other._abs
        return (self._offset, self.precision, self.mantissa) == (other._offset, other.precision, other.mantissa)

    def __hash__(self):
        return hash((self.place, self._offset, self.precision, self.mantissa))

    def __repr__(self):
        if self.is_zero:
            return f"LaurentSeries(0 + O(pi^{self._abs}) at {self.place})"
        terms = []
        for k, d in enumerate(self.digits()):
            if d:
                terms.append(f"({d.format('x')})*pi^{self._offset + k}")
        return f"LaurentSeries({' + '.join(terms)} + O(pi^{self._abs}) at {self.place})"


def _power(P: Poly, n: int) -> Poly:
    return P ** n if n > 0 else Poly.const(P.F, 1)


def laurent_expand(f, place, precision: int) -> LaurentSeries:
    """Expansion of f at ``place`` with ``precision`` known coefficients from its valuation on."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    if f.is_zero():
        return LaurentSeries.zero(place)
    v, a, b = place.local_parts(f)
    mod = _power(place.chart_poly, precision)
    u = (a * b.inverse_mod(mod)) % mod
    return LaurentSeries(place, v, u, precision)
