"""Job spec files: the text input of the command-line front end.

One ``key: value`` pair per line, ``#`` starts a comment::

    field: 5            # or 5^2, optionally followed by a line "modulus: t^2+t+2"
    rank: 2
    D: rational         # all finite rational places, or a divisor such as (x) + (x-1)
    E: 2*(inf)          # optional; g = iota_E times the place blocks below
    budget: 10000000
    precision: 8
    place: (inf); matrix: [[x^-2, 0], [0, x^-2]]

Errors carry the line and column of the offending text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .adele import AdelicMatrix, format_matrix, idele_of_divisor
from .curve import Divisor, Place, check_rational_divisor, parse_divisor, parse_place
from .gf import Field, FieldError, ParseError, field_create, is_prime, parse_poly, parse_rational
from .gf.field import format_prime_poly

KEYS = ("field", "modulus", "rank", "D", "E", "budget", "precision", "place")


class SpecError(ValueError):
    """Syntax or semantic error in a job spec, located by line and column (1-based)."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class JobSpec:
    F: Field
    rank: int = 1
    D: Divisor | None = None
    D_rational: bool = False
    E: Divisor | None = None
    blocks: tuple = ()  # ((Place, matrix rows), ...) in input order
    budget: int | None = None
    precision: int | None = None
    modulus_given: bool = field(default=False, compare=False)

    @property
    def g(self) -> AdelicMatrix:
        g = AdelicMatrix(self.F, self.rank, dict(self.blocks))
        if self.E is not None:
            g = idele_of_divisor(self.E, self.rank) * g
        return g

    @property
    def places(self) -> list[Place]:
        return check_rational_divisor(self.D) if self.D is not None else []


def rational_divisor(F: Field) -> Divisor:
    """Sum of all finite places of degree one."""
    return Divisor(F, [(Place.rational(F, a), 1) for a in range(F.q)])


def _split_top(text: str, start: int):
    """Split on commas at bracket depth zero; yields (piece, absolute offset)."""
    depth = 0
    begin = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            yield text[begin:i], start + begin
            begin = i + 1
    yield text[begin:], start + begin


def parse_matrix_text(text: str, F: Field, line: int, col0: int):
    """``[[e, e], [e, e]]`` with rational-function entries; col0 is the column of text[0]."""
    s = text.rstrip()
    lead = len(s) - len(s.lstrip())
    s = s.strip()
    base = col0 + lead
    if not (s.startswith("[") and s.endswith("]")):
        raise SpecError("matrix must be enclosed in [ ]", line, base)
    inner = s[1:-1]
    rows = []
    for piece, off in _split_top(inner, 1):
        p = piece.strip()
        pcol = base + off + (len(piece) - len(piece.lstrip()))
        if not (p.startswith("[") and p.endswith("]")):
            raise SpecError("matrix row must be enclosed in [ ]", line, pcol)
        row = []
        for entry, eoff in _split_top(p[1:-1], 1):
            ecol = pcol + eoff + (len(entry) - len(entry.lstrip()))
            if not entry.strip():
                raise SpecError("empty matrix entry", line, ecol)
            if "[" in entry or "]" in entry:
                raise SpecError("unexpected bracket in matrix entry", line, ecol + entry.strip().find("[") if "[" in entry else ecol)
            try:
                row.append(parse_rational(entry, F))
            except ParseError as exc:
                raise SpecError(exc.message, line, ecol + exc.column - 1 - (len(entry) - len(entry.lstrip()))) from None
            except ZeroDivisionError:
                raise SpecError("division by zero in matrix entry", line, ecol) from None
        rows.append(tuple(row))
    return tuple(rows)


_FIELD = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")
_PLACE_BLOCK = re.compile(r"^\s*(?P<place>.*?)\s*;\s*matrix\s*:\s*(?P<matrix>.*)$")


def _field_params(value: str, line: int, col: int):
    m = _FIELD.match(value)
    if not m:
        raise SpecError("field must be q, p or p^e", line, col)
    base, e = int(m.group(1)), int(m.group(2) or 1)
    if m.group(2) is None and not is_prime(base):
        # q given as a prime power
        for p in filter(is_prime, range(2, base + 1)):
            k, rest = 0, base
            while rest % p == 0:
                rest //= p
                k += 1
            if k and rest == 1:
                return p, k
        raise SpecError(f"{base} is not a prime power", line, col)
    if not is_prime(base):
        raise SpecError(f"characteristic {base} is not prime", line, col)
    return base, e


def parse_spec(text: str) -> JobSpec:
    entries = {}
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            raise SpecError("expected 'key: value'", lineno, len(body) - len(body.lstrip()) + 1)
        key, value = body.split(":", 1)
        kcol = len(key) - len(key.lstrip()) + 1
        key = key.strip()
        vcol = len(key) + kcol + 1
        if key not in KEYS:
            raise SpecError(f"unknown key {key!r}", lineno, kcol)
        if key == "place":
            blocks.append((value, lineno, vcol))
            continue
        if key in entries:
            raise SpecError(f"duplicate key {key!r}", lineno, kcol)
        entries[key] = (value, lineno, vcol)

    if "field" not in entries:
        raise SpecError("missing 'field'", 1)
    value, ln, col = entries["field"]
    p, e = _field_params(value, ln, col)
    modulus = None
    if "modulus" in entries:
        mval, mln, mcol = entries["modulus"]
        try:
            modulus = parse_poly(mval.replace("t", "x"), field_create(p)).c
        except ParseError as exc:
            raise SpecError(exc.message, mln, mcol + exc.column - 1) from None
    try:
        F = field_create(p, e, modulus)
    except FieldError as exc:
        ln2 = entries["modulus"][1] if "modulus" in entries else ln
        raise SpecError(str(exc), ln2) from None

    def integer(key, default, minimum):
        if key not in entries:
            return default
        v, kln, kcol = entries[key]
        try:
            out = int(v.strip())
        except ValueError:
            raise SpecError(f"{key} must be an integer", kln, kcol) from None
        if out < minimum:
            raise SpecError(f"{key} must be at least {minimum}", kln, kcol)
        return out

    rank = integer("rank", 1, 1)
    budget = integer("budget", None, 1)
    precision = integer("precision", None, 1)

    def divisor(key):
        v, kln, kcol = entries[key]
        try:
            return parse_divisor(v, F)
        except ParseError as exc:
            raise SpecError(exc.message, kln, kcol + exc.column - 1) from None

    D, D_rational = None, False
    if "D" in entries:
        if entries["D"][0].strip() == "rational":
            D, D_rational = rational_divisor(F), True
        else:
            D = divisor("D")
            try:
                check_rational_divisor(D)
            except ValueError as exc:
                raise SpecError(str(exc), entries["D"][1], entries["D"][2]) from None
    E = divisor("E") if "E" in entries else None

    parsed = []
    seen = set()
    for value, bln, bcol in blocks:
        m = _PLACE_BLOCK.match(value)
        if not m:
            raise SpecError("expected 'place: <place>; matrix: [[...]]'", bln, bcol)
        pcol = bcol + m.start("place")
        try:
            place = parse_place(m.group("place"), F)
        except ParseError as exc:
            raise SpecError(exc.message, bln, pcol + exc.column - 1) from None
        if place in seen:
            raise SpecError(f"place {place.format()} given twice", bln, pcol)
        seen.add(place)
        mat = parse_matrix_text(m.group("matrix"), F, bln, bcol + m.start("matrix"))
        if len(mat) != rank or any(len(row) != rank for row in mat):
            raise SpecError(f"matrix is not {rank}x{rank}", bln, bcol + m.start("matrix"))
        parsed.append((place, mat))
    spec = JobSpec(F, rank, D, D_rational, E, tuple(parsed), budget, precision, modulus is not None)
    try:
        spec.g
    except ValueError as exc:
        raise SpecError(str(exc), blocks[0][1] if blocks else 1) from None
    return spec


def format_spec(spec: JobSpec) -> str:
    F = spec.F
    lines = [f"field: {F.p}^{F.e}" if F.e > 1 else f"field: {F.p}"]
    if spec.modulus_given or F.e > 1:
        lines.append(f"modulus: {format_prime_poly(F.modulus, 't')}")
    lines.append(f"rank: {spec.rank}")
    if spec.D is not None:
        lines.append("D: rational" if spec.D_rational else f"D: {spec.D.format()}")
    if spec.E is not None:
        lines.append(f"E: {spec.E.format()}")
    if spec.budget is not None:
        lines.append(f"budget: {spec.budget}")
    if spec.precision is not None:
        lines.append(f"precision: {spec.precision}")
    for place, mat in spec.blocks:
        lines.append(f"place: {place.format()}; matrix: {format_matrix(mat).replace(',', ', ')}")
    return "\n".join(lines) + "\n"


def read_spec(path) -> JobSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


__all__ = ["JobSpec", "SpecError", "format_spec", "parse_matrix_text", "parse_spec", "rational_divisor", "read_spec"]
