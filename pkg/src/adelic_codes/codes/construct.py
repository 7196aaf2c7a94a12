"""Evaluation codes from global sections, and the classical rank-one codes."""

from __future__ import annotations

import numpy as np

from .. import linalg
from ..adele import AdelicMatrix, is_balanced, omega_dual_matrix, twist_by_divisor
from ..cohomology import h0, h0_basis, h1_dim, pole_bounds
from ..curve import (
    Differential,
    Divisor,
    Place,
    check_rational_divisor,
    evaluate,
    residue,
    riemann_roch_basis,
)
from ..gf import RationalFunction
from .linear import LinearCode


def evaluation_vector(f, places: list[Place]) -> list[int]:
    """(f_j(p_i)) laid out point-major, component-minor."""
    return [evaluate(fj, p) for p in places for fj in f]


def _independent_rows(F, vectors):
    """Greedily keep the vectors that raise the rank; returns their indices."""
    keep = []
    rows = []
    for i, v in enumerate(vectors):
        trial = rows + [v]
        if linalg.rank(F, trial) == len(trial):
            rows.append(v)
            keep.append(i)
    return keep


def _design_lower(g: AdelicMatrix, D: Divisor) -> int:
    """n minus the largest number of points of D where a nonzero component can vanish."""
    n = len(D)
    worst = 0
    for C in pole_bounds(g):
        clipped = Divisor(C.F, [(p, min(c, 0) if p in D else c) for p, c in C.items()])
        worst = max(worst, clipped.degree)
    if g.r == 1:
        worst = min(worst, max(g.degree, 0))
    return max(1, n - worst)


def build_code_F(D: Divisor, g: AdelicMatrix) -> LinearCode:
    """C_{F,r}(D, g): the image of H^0(F, g) under evaluation at the points of D."""
    places = check_rational_divisor(D)
    if not is_balanced(g, D):
        raise ValueError("g is not balanced along D")
    F = g.F
    S = h0_basis(g)
    vecs = [evaluation_vector(f, places) for f in S.basis]
    keep = _independent_rows(F, vecs)
    G = linalg.as_array([vecs[i] for i in keep], g.r * len(places))
    k_expected = S.dim - h0(twist_by_divisor(g, D, -1))
    if len(keep) != k_expected:
        raise AssertionError(f"code dimension {len(keep)} differs from h0(g) - h0(g(-D)) = {k_expected}")
    return LinearCode(
        F,
        G,
        g.r,
        label="C_F",
        sections=[S.basis[i] for i in keep],
        design_lower=_design_lower(g, D),
    )


def build_code_Omega(D: Divisor, g: AdelicMatrix, w0: Differential) -> LinearCode:
    """C_{Omega,r}(D, g), realized as the F-code of iota_((w0)+D) g^-T."""
    dual = omega_dual_matrix(g, w0, D)
    C = build_code_F(D, dual)
    C.label = "C_Omega"
    k_expected = h1_dim(twist_by_divisor(g, D, -1), w0) - h1_dim(g, w0)
    if C.k != k_expected:
        raise AssertionError(f"differential code dimension {C.k} differs from h1(g(-D)) - h1(g) = {k_expected}")
    return C


def classical_CL(D: Divisor, E: Divisor) -> LinearCode:
    """C_L(D, E) = {(f(p_1), ..., f(p_n)) : f in L(E)}."""
    places = check_rational_divisor(D)
    if any(p in E for p in places):
        raise ValueError("supports of D and E must be disjoint")
    F = D.F
    basis = riemann_roch_basis(E)
    vecs = [evaluation_vector((f,), places) for f in basis]
    keep = _independent_rows(F, vecs)
    n = len(places)
    k_expected = max(0, E.degree + 1) - max(0, E.degree - n + 1)
    if len(keep) != k_expected:
        raise AssertionError(f"C_L dimension {len(keep)} differs from l(E) - l(E - D) = {k_expected}")
    return LinearCode(
        F,
        linalg.as_array([vecs[i] for i in keep], n),
        1,
        label="C_L",
        sections=[(basis[i],) for i in keep],
        design_lower=max(1, n - max(E.degree, 0)),
    )


def classical_COmega_residue(D: Divisor, E: Divisor, w0: Differential) -> LinearCode:
    """C_Omega(D, E) from residues of the differentials f*w0 with f in L((w0) + D - E)."""
    places = check_rational_divisor(D)
    if any(p in E for p in places):
        raise ValueError("supports of D and E must be disjoint")
    F = D.F
    H = w0.divisor() + D - E
    vecs = [[residue(Differential(f * w0.h), p) for p in places] for f in riemann_roch_basis(H)]
    keep = _independent_rows(F, vecs)
    C = LinearCode(F, linalg.as_array([vecs[i] for i in keep], len(places)), 1, label="C_Omega")
    if not C.same_space(classical_CL(D, H)):
        raise AssertionError("residue code differs from C_L(D, (w0) + D - E)")
    return C


def codeword_of_section(C: LinearCode, f, D: Divisor) -> np.ndarray:
    return np.array(evaluation_vector(f, check_rational_divisor(D)), dtype=np.int64)


def section_of_message(C: LinearCode, message) -> tuple:
    if C.sections is None:
        raise ValueError("code does not carry its sections")
    F = C.F
    r = len(C.sections[0]) if C.sections else C.r
    out = [RationalFunction.zero(F)] * r
    for c, f in zip(message, C.sections):
        c = int(c)
        if c:
            k = RationalFunction.const(F, c)
            out = [a + k * b for a, b in zip(out, f)]
    return tuple(out)
