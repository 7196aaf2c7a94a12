"""Quick seeded invariant suites, run by ``adelic-codes selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .adele import det, determinantal_orders, local_smith_form
from .codes import build_code_F, build_code_Omega, dual_code
from .cohomology import euler_char, h0_basis, is_section
from .curve import d_special_differential, valuation
from .gf import field_create
from .instances import random_adelic_matrix, random_balanced, random_local_matrix, random_places, random_rational_divisor
from .kernels import BACKEND


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def format(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.cases - self.failures}/{self.cases}" + (f" ({self.detail})" if self.detail else "")


def riemann_roch(rng, cases=20) -> SuiteResult:
    bad = 0
    for _ in range(cases):
        F = field_create(rng.choice((2, 3, 5)))
        g = random_adelic_matrix(F, rng.randint(1, 2), rng, max_places=2, vmin=-3, vmax=3)
        try:
            euler_char(g)
        except AssertionError:
            bad += 1
    return SuiteResult("riemann_roch", cases, bad)


def code_duality(rng, cases=8) -> SuiteResult:
    bad = 0
    for _ in range(cases):
        F = field_create(rng.choice((3, 5)))
        D = random_rational_divisor(F, rng, rng.randint(2, min(4, F.q)))
        g = random_balanced(F, rng.randint(1, 2), D, rng)
        C = build_code_F(D, g)
        Cd = build_code_Omega(D, g, d_special_differential(D))
        if C.k + Cd.k != C.length or not Cd.same_space(dual_code(C)):
            bad += 1
    return SuiteResult("code_duality", cases, bad)


def smith_round_trip(rng, cases=20) -> SuiteResult:
    bad = 0
    for _ in range(cases):
        F = field_create(rng.choice((2, 3, 5)))
        p = random_places(F, rng, 1)[0]
        m = random_local_matrix(F, p, rng.randint(1, 3), rng)
        S = local_smith_form(m, p)
        if not (S.check_exact() and S.check_series()) or sum(S.orders) != valuation(det(m), p):
            bad += 1
        elif tuple(sorted(S.orders)) != tuple(sorted(determinantal_orders(m, p))):
            bad += 1
    return SuiteResult("smith_round_trip", cases, bad)


def sections(rng, cases=10) -> SuiteResult:
    bad = 0
    for _ in range(cases):
        F = field_create(rng.choice((2, 3)))
        g = random_adelic_matrix(F, rng.randint(1, 2), rng, max_places=2, vmin=-2, vmax=2)
        S = h0_basis(g)
        if not all(is_section(g, f) for f in S.basis):
            bad += 1
    return SuiteResult("sections_are_sections", cases, bad)


def run(seed: int = 0) -> list[SuiteResult]:
    rng = random.Random(seed)
    return [riemann_roch(rng), code_duality(rng), smith_round_trip(rng), sections(rng)]


def report(results, seed: int) -> str:
    lines = [f"backend = {BACKEND}", f"seed = {seed}"]
    lines += [r.format() for r in results]
    return "\n".join(lines) + "\n"


__all__ = ["SuiteResult", "report", "run"]
