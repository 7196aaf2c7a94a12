"""Margin elements, logarithmic transforms and the distance/dimension bound audit."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..adele import AdelicMatrix, degree, is_balanced
from ..cohomology import is_section, is_semistable, splitting_type
from ..curve import Differential, Divisor, check_rational_divisor, d_special_differential, valuation
from ..gf import RationalFunction
from .construct import build_code_F, build_code_Omega, section_of_message
from .linear import DEFAULT_BUDGET, encode, min_distance


def _delta(fj, p) -> int:
    """1 when ord_p(f_j) >= 1 (the zero function included), else 0."""
    return 1 if fj.is_zero() or valuation(fj, p) >= 1 else 0


def margin_element(f, D: Divisor, g: AdelicMatrix) -> AdelicMatrix:
    """chi(f, D): diag(pi^-delta_1, ..., pi^-delta_r) at each point of D, identity elsewhere."""
    places = check_rational_divisor(D)
    if not is_section(g, f):
        raise ValueError("f is not a global section of g")
    if not is_balanced(g, D):
        raise ValueError("g is not balanced along D")
    F = g.F
    zero = RationalFunction.zero(F)
    support = {}
    for p in places:
        inv_pi = p.uniformizer.inverse()
        support[p] = [
            [(inv_pi if _delta(f[j], p) else RationalFunction.one(F)) if i == j else zero for j in range(g.r)]
            for i in range(g.r)
        ]
    return AdelicMatrix(F, g.r, support)


def zero_count(f, D: Divisor) -> int:
    """sum over points and components of delta; the symbol weight of ev(f) is n r minus this."""
    return sum(_delta(fj, p) for p in check_rational_divisor(D) for fj in f)


def log_transform(g: AdelicMatrix, f, D: Divisor) -> AdelicMatrix:
    """g * chi(f, D); f stays a global section of the result."""
    out = g * margin_element(f, D, g)
    if not is_section(out, f):
        raise AssertionError("f is not a section of its logarithmic transform")
    assert degree(out) == degree(g) - zero_count(f, D)
    return out


@dataclass
class Check:
    name: str
    status: str  # pass, fail, n/a, undecided
    detail: str = ""


@dataclass
class CodeReport:
    n: int
    r: int
    k: int
    k_dual: int
    degree: int
    splitting_type: tuple
    semistable: bool
    slope: object
    distance: object
    checks: list = field(default_factory=list)
    witness_section: tuple | None = None
    witness_codeword: object = None
    q: int = 0

    @property
    def violations(self):
        return [c for c in self.checks if c.status == "fail"]

    def to_text(self) -> str:
        d = self.distance
        lines = [
            f"q = {self.q}",
            f"n = {self.n}",
            f"r = {self.r}",
            f"length = {self.n * self.r}",
            f"k = {self.k}",
            f"k_dual = {self.k_dual}",
            f"k_plus_k_dual = {self.k + self.k_dual}",
            f"degree = {self.degree}",
            f"splitting_type = {','.join(str(a) for a in self.splitting_type)}",
            f"semistable = {str(self.semistable).lower()}",
            f"slope = {self.slope}",
            f"d_exact = {str(d.exact).lower() if d is not None else 'true'}",
            f"d_symbol = {d.format('symbol') if d is not None else 'none'}",
            f"d_block = {d.format('block') if d is not None else 'none'}",
        ]
        for c in self.checks:
            lines.append(f"check.{c.name} = {c.status}" + (f"; {c.detail}" if c.detail else ""))
        if self.witness_section is not None:
            lines.append("witness_section = (" + ", ".join(x.format() for x in self.witness_section) + ")")
        if self.witness_codeword is not None:
            lines.append("witness_codeword = " + " ".join(str(int(a)) for a in self.witness_codeword))
        lines.append(f"violations = {len(self.violations)}")
        return "\n".join(lines) + "\n"


def _compare(name, lower, upper, bound, relation="ge"):
    """Decide 'd >= bound' (or '<=') from an interval [lower, upper] containing d."""
    if relation == "ge":
        if lower >= bound:
            return Check(name, "pass", f"value {_iv(lower, upper)} >= {bound}")
        if upper < bound:
            return Check(name, "fail", f"value {_iv(lower, upper)} < {bound}")
        return Check(name, "undecided", f"value {_iv(lower, upper)} vs {bound}")
    if upper <= bound:
        return Check(name, "pass", f"value {_iv(lower, upper)} <= {bound}")
    if lower > bound:
        return Check(name, "fail", f"value {_iv(lower, upper)} > {bound}")
    return Check(name, "undecided", f"value {_iv(lower, upper)} vs {bound}")


def _iv(lo, hi):
    return str(lo) if lo == hi else f"[{lo},{hi}]"


def distance_bound_audit(D: Divisor, g: AdelicMatrix, budget: int = DEFAULT_BUDGET, w0: Differential | None = None,
                         genus: int = 0) -> CodeReport:
    """Build C_F(D, g) and its differential partner, then evaluate the stated bounds.

    Every bound is recorded as pass, fail, n/a (hypothesis not met) or
    undecided (the distance is only known as an interval). For rank one the
    classical bound d >= n - deg g is a hard assertion.
    """
    places = check_rational_divisor(D)
    n, r = len(places), g.r
    if w0 is None:
        w0 = d_special_differential(D)
    C = build_code_F(D, g)
    Cd = build_code_Omega(D, g, w0)
    deg = degree(g)
    stype = splitting_type(g)
    semi, slope = is_semistable(g)
    dist = min_distance(C, budget) if C.k else None
    report = CodeReport(n, r, C.k, Cd.k, deg, stype, semi, slope, dist, q=g.F.q)
    checks = report.checks
    checks.append(Check("dimension_sum", "pass" if C.k + Cd.k == r * n else "fail", f"{C.k} + {Cd.k} vs {r * n}"))
    if C.k == 0:
        checks.append(Check("distance_bound", "n/a", "zero code"))
        checks.append(Check("singleton_upper", "n/a", "zero code"))
        checks.append(Check("singleton_lower", "n/a", "zero code"))
    else:
        lo, hi = dist.symbol_lower, dist.symbol_upper
        bound = n * r - deg
        if semi:
            chk = _compare("distance_bound", lo, hi, bound)
            checks.append(chk)
            if chk.status == "fail" or (dist.exact and lo == hi):
                report.witness_codeword = encode(C, dist.symbol_witness)
                report.witness_section = section_of_message(C, dist.symbol_witness)
        else:
            checks.append(Check("distance_bound", "n/a", "g is not semistable"))
        if r == 1 and lo < bound and dist.exact:
            raise AssertionError(f"rank-one distance {lo} below n - deg g = {bound}")
        checks.append(_compare("singleton_upper", C.k + lo, C.k + hi, r * n + 1, "le"))
        if semi and deg < r * n:
            checks.append(_compare("singleton_lower", C.k + lo, C.k + hi, r * (n - (genus - 1))))
        else:
            checks.append(Check("singleton_lower", "n/a", "needs semistable g with deg g < r n"))
    # dimension statements for semistable g
    if semi:
        if deg < r * n:
            b = deg - r * (genus - 1)
            checks.append(Check("dimension_k_lower", "pass" if C.k >= b else "fail", f"k = {C.k} vs {b}"))
        else:
            checks.append(Check("dimension_k_lower", "n/a", "deg g >= r n"))
        if deg > 2 * r * (genus - 1):
            b = r * (n + genus - 1) - deg
            checks.append(Check("dimension_kdual_lower", "pass" if Cd.k >= b else "fail", f"k_dual = {Cd.k} vs {b}"))
        else:
            checks.append(Check("dimension_kdual_lower", "n/a", "deg g <= 2 r (genus - 1)"))
        if r * n > deg > 2 * r * (genus - 1):
            bk, bd = deg - r * (genus - 1), r * (n + genus - 1) - deg
            ok = C.k == bk and Cd.k == bd
            checks.append(Check("dimension_exact", "pass" if ok else "fail", f"k = {C.k} vs {bk}, k_dual = {Cd.k} vs {bd}"))
        else:
            checks.append(Check("dimension_exact", "n/a", "degree outside the range"))
    else:
        for name in ("dimension_k_lower", "dimension_kdual_lower", "dimension_exact"):
            checks.append(Check(name, "n/a", "g is not semistable"))
    # the logarithmic transform along a minimum-weight section
    if C.k and semi and dist.exact:
        f0 = section_of_message(C, dist.symbol_witness)
        gl = log_transform(g, f0, D)
        kept = is_semistable(gl)[0]
        checks.append(
            Check(
                "log_transform_semistable",
                "pass" if kept else "fail",
                f"type {','.join(map(str, splitting_type(gl)))} of degree {degree(gl)}",
            )
        )
    else:
        checks.append(Check("log_transform_semistable", "n/a", "needs semistable g and an exact witness"))
    return report


__all__ = [
    "Check",
    "CodeReport",
    "distance_bound_audit",
    "log_transform",
    "margin_element",
    "zero_count",
]
