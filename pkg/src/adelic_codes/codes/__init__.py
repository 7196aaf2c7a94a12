"""Rank-r evaluation codes, their differential partners, and the bound audit."""

from .audit import Check, CodeReport, distance_bound_audit, log_transform, margin_element, zero_count
from .construct import (
    build_code_F,
    build_code_Omega,
    classical_CL,
    classical_COmega_residue,
    codeword_of_section,
    evaluation_vector,
    section_of_message,
)
from .linear import (
    DEFAULT_BUDGET,
    DecodeResult,
    Distance,
    LinearCode,
    dual_code,
    encode,
    erasure_decode,
    min_distance,
    parse_matrix,
)

__all__ = [
    "Check",
    "CodeReport",
    "DEFAULT_BUDGET",
    "DecodeResult",
    "Distance",
    "LinearCode",
    "build_code_F",
    "build_code_Omega",
    "classical_CL",
    "classical_COmega_residue",
    "codeword_of_section",
    "distance_bound_audit",
    "dual_code",
    "encode",
    "erasure_decode",
    "evaluation_vector",
    "log_transform",
    "margin_element",
    "min_distance",
    "parse_matrix",
    "section_of_message",
    "zero_count",
]
