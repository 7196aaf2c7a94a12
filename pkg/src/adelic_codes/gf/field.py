"""Prime-power finite fields with table-driven arithmetic.

An element of F_q, q = p^e, is stored as an integer index
``c_0 + c_1 p + ... + c_{e-1} p^{e-1}`` where ``c_0 + c_1 t + ... `` is its
representative polynomial modulo the defining modulus. For e = 1 the index is
simply the residue mod p.
"""

from __future__ import annotations

import functools

import numpy as np

MAX_ORDER = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- raw polynomial helpers over F_p (coefficient lists, low degree first) --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _monic_polys(p, d):
    """All monic degree-d polynomials over F_p, ordered by their lower-coefficient index."""
    for idx in range(p ** d):
        coeffs = []
        for _ in range(d):
            coeffs.append(idx % p)
            idx //= p
        yield coeffs + [1]


def _is_irreducible_prime(m, p) -> bool:
    """Trial factorization of a monic polynomial over the prime field F_p."""
    d = len(m) - 1
    if d <= 0:
        return False
    for k in range(1, d // 2 + 1):
        for cand in _monic_polys(p, k):
            if not _pmod(m, cand, p):
                return False
    return True


def lex_smallest_irreducible(p: int, e: int) -> tuple:
    for cand in _monic_polys(p, e):
        if _is_irreducible_prime(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


class Field:
    """The finite field F_{p^e} = F_p[t]/(modulus)."""

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError("extension degree must be positive")
        if p ** e > MAX_ORDER:
            raise FieldError(f"field order {p ** e} exceeds the supported maximum {MAX_ORDER}")
        if modulus is None:
            modulus = lex_smallest_irreducible(p, e) if e > 1 else (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        modulus = tuple(_trim(list(modulus)))
        if len(modulus) - 1 != e or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}")
        if e > 1 and not _is_irreducible_prime(list(modulus), p):
            raise FieldError(f"modulus {format_prime_poly(modulus, 't')} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        digits = [self._digits(a) for a in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits[a]
            for b in range(a, q):
                db = digits[b]
                s = self._index([(x + y) % p for x, y in zip(da, db)])
                add[a][b] = add[b][a] = s
                if e == 1:
                    m = a * b % p
                else:
                    m = self._index(_pmod(_pmul(_trim(list(da)), _trim(list(db)), p), self.modulus, p))
                mul[a][b] = mul[b][a] = m
        self.add = add
        self.mul = mul
        self.neg = [self._index([(-x) % p for x in digits[a]]) for a in range(q)]
        self.sub = [[add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = mul[a]
            for b in range(1, q):
                if row[b] == 1:
                    inv[a] = b
                    break
        self.inv = inv
        self.zero, self.one = 0, 1

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _index(self, coeffs):
        idx = 0
        for c in reversed(list(coeffs) + [0] * (self.e - len(coeffs))):
            idx = idx * self.p + c
        return idx

    # -- element level -------------------------------------------------
    def __call__(self, n: int) -> int:
        """The image of the integer n under Z -> F_q."""
        return n % self.p

    @property
    def generator(self) -> int:
        """The class of t (equal to the index p for e > 1)."""
        return self.p if self.e > 1 else 1

    def elements(self):
        return range(self.q)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in " + repr(self))
        return self.mul[a][self.inv[b]]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv[a], -n
        result = 1
        while n:
            if n & 1:
                result = self.mul[result][a]
            a = self.mul[a][a]
            n >>= 1
        return result

    def digits(self, a: int) -> list:
        return self._digits(a)

    def format_element(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        return format_prime_poly(self._digits(a), "t")

    @functools.cached_property
    def tables(self):
        """numpy copies of the arithmetic tables, for the compiled kernels."""
        return (
            np.array(self.add, dtype=np.int64),
            np.array(self.mul, dtype=np.int64),
            np.array(self.neg, dtype=np.int64),
            np.array(self.inv, dtype=np.int64),
        )

    # -- identity ------------------------------------------------------
    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={format_prime_poly(self.modulus, 't')})"

    def header(self) -> str:
        """One-line description used in output headers."""
        if self.e == 1:
            return f"field: {self.p}"
        return f"field: {self.p}^{self.e}; modulus: {format_prime_poly(self.modulus, 'x')}"


def format_prime_poly(coeffs, var: str) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def _cached_field(p, e, modulus):
    return Field(p, e, modulus)


def field_create(p: int, e: int = 1, modulus=None) -> Field:
    """Cached field constructor; identical parameters return the same object.

    ``modulus`` is a coefficient sequence over F_p, lowest degree first.
    """
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus) if is_prime(p) else tuple(modulus)
    return _cached_field(p, e, modulus)
