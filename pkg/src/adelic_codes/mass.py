"""Exact evaluation of the Harder-Narasimhan mass formula and genus-zero oracles.

Everything is an exact Fraction. The normalization of the completed zeta
value at s = 1 and the sign of the alternating sum are left open by the
formula as usually printed, so they are parameters (a Convention) and the
calibrator compares every choice against an independent count on P^1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .gf import is_prime

SIGNS = ("k", "k-1")
NORMALIZATIONS = ("s_residue", "t_residue", "class_number")
DENOMINATORS = ("product", "single")


@dataclass(frozen=True)
class ZetaData:
    """Z(T) = P(T) / ((1 - T)(1 - qT)) with T = q^-s; P has integer coefficients, lowest first."""

    q: int
    genus: int = 0
    numerator: tuple = (1,)

    def __post_init__(self):
        if not _is_prime_power(self.q):
            raise ValueError(f"{self.q} is not a prime power")
        P = tuple(self.numerator)
        while len(P) > 1 and P[-1] == 0:
            P = P[:-1]
        if len(P) - 1 != 2 * self.genus:
            raise ValueError("numerator degree must be twice the genus")
        if P[0] != 1:
            raise ValueError("numerator must satisfy P(0) = 1")
        object.__setattr__(self, "numerator", P)

    def P(self, T: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.numerator):
            acc = acc * T + c
        return acc

    @property
    def class_number(self) -> int:
        return sum(self.numerator)


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1 and is_prime(p)


@dataclass(frozen=True)
class Convention:
    sign: str = "k-1"
    normalization: str = "s_residue"
    denominator: str = "product"

    def __post_init__(self):
        if self.sign not in SIGNS:
            raise ValueError(f"sign must be one of {SIGNS}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
        if self.denominator not in DENOMINATORS:
            raise ValueError(f"denominator must be one of {DENOMINATORS}")

    @property
    def name(self) -> str:
        return f"sign={self.sign},norm={self.normalization},den={self.denominator}"


def all_conventions():
    return [Convention(s, n, d) for s, n, d in product(SIGNS, NORMALIZATIONS, DENOMINATORS)]


def zeta_p1(q: int) -> ZetaData:
    return ZetaData(q, 0, (1,))


def zeta_hat_eval(z: ZetaData, n: int) -> Fraction:
    """q^((genus-1) n) Z(q^-n) for an integer n >= 2."""
    if n < 2:
        raise ValueError("the completed zeta function has a pole at s = 1; use zeta_hat_special1")
    q = Fraction(z.q)
    T = q ** -n
    return q ** ((z.genus - 1) * n) * z.P(T) / ((1 - T) * (1 - q * T))


def zeta_hat_special1(z: ZetaData, c: Convention) -> Fraction:
    """The value standing in for the completed zeta function at s = 1, with log q dropped.

    s_residue: residue in s, times log q: q^(g-1) P(1/q) / (1 - 1/q).
    t_residue: |residue at T = 1/q of T^(1-g) Z(T)| = q^(g-1) P(1/q) / (q - 1).
    class_number: q^(g-1) h / (q - 1) with h = P(1).
    """
    q = Fraction(z.q)
    scale = q ** (z.genus - 1)
    if c.normalization == "s_residue":
        return scale * z.P(1 / q) / (1 - 1 / q)
    if c.normalization == "t_residue":
        return scale * z.P(1 / q) / (q - 1)
    return scale * z.class_number / (q - 1)


def compositions(r: int):
    """All ordered tuples of positive integers summing to r (2^(r-1) of them)."""
    if r == 0:
        yield ()
        return
    for first in range(1, r + 1):
        for rest in compositions(r - first):
            yield (first,) + rest


def beta_terms(z: ZetaData, r: int, c: Convention):
    """(composition, signed term) pairs of the alternating sum."""
    v = {n: (zeta_hat_special1(z, c) if n == 1 else zeta_hat_eval(z, n)) for n in range(1, r + 1)}
    q = z.q
    out = []
    for comp in compositions(r):
        k = len(comp)
        sign = (-1) ** k if c.sign == "k" else (-1) ** (k - 1)
        num = Fraction(1)
        for n in comp:
            num *= v[n]
        if c.denominator == "product":
            den = 1
            for j in range(k - 1):
                den *= q ** (comp[j] + comp[j + 1]) - 1
        else:
            den = q ** sum(comp[j] + comp[j + 1] for j in range(k - 1)) - 1 if k > 1 else 1
        out.append((comp, sign * num / den))
    return out


def beta_mass(z: ZetaData, r: int, alpha: int = 0, c: Convention = Convention()) -> Fraction:
    """beta_{r, r alpha} as an alternating sum over compositions of r.

    The printed formula does not involve alpha; it is accepted so callers can
    record which degree they meant.
    """
    if r < 1:
        raise ValueError("rank must be positive")
    return sum((t for _, t in beta_terms(z, r, c)), Fraction(0))


# -- genus-zero oracles --------------------------------------------------------


def gl_order(r: int, q: int) -> int:
    out = 1
    for i in range(r):
        out *= q ** r - q ** i
    return out


def split_bundle_aut_order(q: int, degrees) -> int:
    """|Aut(O(a_1) + ... + O(a_r))| on P^1 over F_q.

    Block lower-triangular in the degree order: GL of each multiplicity block,
    times Hom(O(a_j), O(a_i)) = H^0(O(a_i - a_j)) of size q^(a_i - a_j + 1) for
    every pair with a_i > a_j.
    """
    a = sorted(degrees, reverse=True)
    out = 1
    mult = {}
    for x in a:
        mult[x] = mult.get(x, 0) + 1
    for m in mult.values():
        out *= gl_order(m, q)
    exp = 0
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] > a[j]:
                exp += a[i] - a[j] + 1
    return out * q ** exp


@dataclass(frozen=True)
class OracleValue:
    value: Fraction
    tail_bound: Fraction = Fraction(0)
    types: int = 0


def splitting_types(r: int, d: int, spread: Fraction):
    """Non-increasing integer tuples of length r, sum d, with every |a_i - d/r| <= spread."""
    mean = Fraction(d, r)
    lo = -((-(mean - spread).numerator) // (mean - spread).denominator)  # ceil
    hi = (mean + spread).numerator // (mean + spread).denominator  # floor

    def rec(prefix, remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for x in range(min(cap, hi), lo - 1, -1):
            rest = remaining - x
            if rest > x * (slots - 1) or rest < lo * (slots - 1):
                continue
            yield from rec(prefix + [x], rest, slots - 1, x)

    yield from rec([], d, r, hi)


def p1_mass_oracle(r: int, d: int, q: int, mode: str = "semistable", truncation: int = 20) -> OracleValue:
    """Sum of 1/|Aut E| over rank-r degree-d bundles on P^1, by splitting type.

    semistable: only O(d/r)^r, present when r divides d.
    total: every type whose entries stay within ``truncation`` of d/r, plus a
    rigorous bound on the omitted remainder.
    """
    if mode == "semistable":
        if d % r:
            return OracleValue(Fraction(0), Fraction(0), 0)
        return OracleValue(Fraction(1, gl_order(r, q)), Fraction(0), 1)
    if mode != "total":
        raise ValueError("mode must be 'semistable' or 'total'")
    total = Fraction(0)
    count = 0
    for t in splitting_types(r, d, Fraction(truncation)):
        total += Fraction(1, split_bundle_aut_order(q, t))
        count += 1
    return OracleValue(total, total_tail_bound(r, q, truncation), count)


def total_tail_bound(r: int, q: int, truncation: int) -> Fraction:
    """Upper bound for the mass of types whose spread exceeds ``truncation``.

    A type with spread in (m - 1, m] has a_1 - a_r >= m, so its automorphism
    group has order at least (q-1)^r q^(m+1); there are at most (2m+2)^(r-1)
    such types. The series is summed term by term until the ratio of
    consecutive terms is below one for good, then closed geometrically.
    """
    if r == 1:
        return Fraction(0)
    base = Fraction(1, (q - 1) ** r)

    def term(m):
        return base * Fraction((2 * m + 2) ** (r - 1), q ** (m + 1))

    acc = Fraction(0)
    m = truncation + 1
    while True:
        rho = Fraction((2 * m + 4) ** (r - 1), (2 * m + 2) ** (r - 1) * q)
        if rho < 1:
            return acc + term(m) / (1 - rho)
        acc += term(m)
        m += 1


# -- calibration ---------------------------------------------------------------


def decimal_string(x: Fraction, rounding: str = "down", digits: int = 12) -> str:
    """Fixed-point rendering of a Fraction rounded toward -inf ("down") or +inf ("up")."""
    scaled = x * 10 ** digits
    n = scaled.numerator // scaled.denominator
    if rounding == "up" and n * scaled.denominator != scaled.numerator:
        n += 1
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 10 ** digits}.{n % 10 ** digits:0{digits}d}"


@dataclass(frozen=True)
class CalibrationRow:
    convention: Convention
    q: int
    r: int
    formula: Fraction
    oracle: Fraction
    total: Fraction
    total_tail: Fraction

    @property
    def match(self) -> bool:
        return self.formula == self.oracle

    @property
    def within_total(self) -> bool:
        return self.total <= self.formula <= self.total + self.total_tail


@dataclass
class CalibrationReport:
    rows: list
    invalid: list
    matching: list
    total_matching: list

    @property
    def verdict(self) -> str:
        if self.matching:
            return "matching convention(s): " + "; ".join(c.name for c in self.matching)
        return "no listed convention matches"

    def format_table(self) -> str:
        head = ("convention", "q", "r", "formula", "oracle", "match", "total_mass_lower", "tail_bound", "in_total", "valid")
        body = [
            (
                row.convention.name,
                str(row.q),
                str(row.r),
                str(row.formula),
                str(row.oracle),
                "yes" if row.match else "no",
                decimal_string(row.total, "down"),
                decimal_string(row.total_tail, "up"),
                "yes" if row.within_total else "no",
                "no" if row.convention in self.invalid else "yes",
            )
            for row in self.rows
        ]
        widths = [max(len(x[i]) for x in [head] + body) for i in range(len(head))]
        lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in body]
        lines.append("")
        for c in self.invalid:
            lines.append(f"invalid (negative mass): {c.name}")
        lines.append("verdict: " + self.verdict)
        if self.total_matching:
            lines.append("within total-mass bracket on every row: " + "; ".join(c.name for c in self.total_matching))
        return "\n".join(lines) + "\n"

    def format_keyvalue(self) -> str:
        lines = []
        for i, row in enumerate(self.rows):
            pre = f"row.{i}"
            lines += [
                f"{pre}.convention = {row.convention.name}",
                f"{pre}.q = {row.q}",
                f"{pre}.r = {row.r}",
                f"{pre}.formula = {row.formula}",
                f"{pre}.oracle = {row.oracle}",
                f"{pre}.match = {str(row.match).lower()}",
                f"{pre}.valid = {str(row.convention not in self.invalid).lower()}",
            ]
        lines.append("invalid = " + ";".join(c.name for c in self.invalid))
        lines.append("verdict = " + self.verdict)
        return "\n".join(lines) + "\n"


def calibrate_convention(qs=(2, 3), rs=(1, 2, 3), alpha: int = 0, conventions=None, truncation: int = 30):
    """Compare the formula under each convention with the P^1 oracles."""
    conventions = list(conventions or all_conventions())
    rows, invalid, matching, total_matching = [], [], [], []
    oracle = {}
    for q in qs:
        for r in rs:
            d = r * alpha
            oracle[q, r] = (p1_mass_oracle(r, d, q).value, p1_mass_oracle(r, d, q, "total", truncation))
    for c in conventions:
        mine = []
        for q in qs:
            z = zeta_p1(q)
            for r in rs:
                semi, tot = oracle[q, r]
                mine.append(CalibrationRow(c, q, r, beta_mass(z, r, alpha, c), semi, tot.value, tot.tail_bound))
        rows += mine
        if any(row.formula < 0 for row in mine):
            invalid.append(c)
        elif all(row.match for row in mine):
            matching.append(c)
        if all(row.within_total for row in mine) and c not in invalid:
            total_matching.append(c)
    return CalibrationReport(rows, invalid, matching, total_matching)


@lru_cache(maxsize=None)
def count_invertible(r: int, q: int) -> int:
    """Exhaustive count of invertible r x r matrices over the prime field F_q (tiny cases)."""
    if not is_prime(q):
        raise ValueError("exhaustive count only for prime q")
    from .gf import field_create
    from . import linalg

    F = field_create(q)
    n = 0
    for entries in product(range(q), repeat=r * r):
        M = [entries[i * r:(i + 1) * r] for i in range(r)]
        if linalg.rank(F, M) == r:
            n += 1
    return n
