import random
from itertools import combinations

import numpy as np
import pytest

from adelic_codes import linalg
from adelic_codes.adele import AdelicMatrix, degree, idele_of_divisor
from adelic_codes.cohomology import h0_basis, is_section, is_semistable
from adelic_codes.codes import (
    LinearCode,
    build_code_F,
    build_code_Omega,
    classical_CL,
    classical_COmega_residue,
    codeword_of_section,
    distance_bound_audit,
    dual_code,
    encode,
    erasure_decode,
    evaluation_vector,
    log_transform,
    margin_element,
    min_distance,
    parse_matrix,
    section_of_message,
    zero_count,
)
from adelic_codes.curve import Divisor, Place, d_special_differential, parse_divisor
from adelic_codes.gf import RationalFunction, field_create, parse_rational
from adelic_codes.instances import random_balanced, random_rational_divisor, split_matrix

from oracles import weight_enumeration


def full_D(F):
    return Divisor.sum_of([Place.rational(F, a) for a in range(F.q)])


def iota(F, text, r=1):
    return idele_of_divisor(parse_divisor(text, F), r)


@pytest.fixture(scope="module")
def F5():
    return field_create(5)


def test_reed_solomon(F5):
    D = full_D(F5)
    C = build_code_F(D, iota(F5, "2*(inf)"))
    assert (C.length, C.k) == (5, 3)
    assert C.same_space(classical_CL(D, parse_divisor("2*(inf)", F5)))
    d = min_distance(C)
    assert d.exact and d.symbol == 3
    w = codeword_of_section(C, (parse_rational("x^2", F5),), D)
    assert list(w) == [0, 1, 4, 4, 1]
    assert linalg.solve_left(F5, C.G, w) is not None


def test_encode_unit_vectors(F5):
    C = build_code_F(full_D(F5), iota(F5, "2*(inf)"))
    assert not encode(C, [0, 0, 0]).any()
    for i in range(C.k):
        e = [0] * C.k
        e[i] = 1
        assert list(encode(C, e)) == list(C.G[i])
    with pytest.raises(ValueError):
        encode(C, [1, 2])


def test_messages_map_to_sections(F5):
    D = full_D(F5)
    C = build_code_F(D, split_matrix(F5, (2, 1)))
    rng = random.Random(0)
    for _ in range(10):
        msg = [rng.randrange(5) for _ in range(C.k)]
        f = section_of_message(C, msg)
        assert list(encode(C, msg)) == evaluation_vector(f, sorted(D.support, key=lambda p: p.sort_key()))


def test_zero_code(F5):
    C = build_code_F(full_D(F5), iota(F5, "-1*(inf)"))
    assert C.k == 0 and C.length == 5
    assert min_distance(C).symbol is None
    assert dual_code(C).k == 5


def test_interleaved_rank_two(F5):
    D = full_D(F5)
    g = iota(F5, "2*(inf)", 2)
    C = build_code_F(D, g)
    assert (C.length, C.k) == (10, 6)
    Cd = build_code_Omega(D, g, d_special_differential(D))
    assert (Cd.length, Cd.k) == (10, 4)
    d = min_distance(C)
    assert d.exact and d.symbol == 3 and d.block == 3


def test_omega_code_rank_one(F5):
    D = full_D(F5)
    w = d_special_differential(D)
    Cd = build_code_Omega(D, iota(F5, "2*(inf)"), w)
    assert Cd.k == 2
    assert Cd.same_space(dual_code(build_code_F(D, iota(F5, "2*(inf)"))))
    assert build_code_Omega(D, AdelicMatrix.identity(F5, 1), w).k == 4


def test_dual_code_properties(F5):
    C = build_code_F(full_D(F5), split_matrix(F5, (1, 0)))
    Cd = dual_code(C)
    assert C.k + Cd.k == C.length
    assert not linalg.matmul(F5, C.G, Cd.G.T).any()
    assert dual_code(Cd).same_space(C)


def test_duality_random():
    rng = random.Random(31)
    for _ in range(25):
        F = field_create(rng.choice((2, 3, 5)))
        D = random_rational_divisor(F, rng, rng.randint(1, F.q))
        g = random_balanced(F, rng.randint(1, 2), D, rng)
        C = build_code_F(D, g)
        Cd = build_code_Omega(D, g, d_special_differential(D))
        assert C.k + Cd.k == g.r * len(D)
        assert Cd.same_space(dual_code(C))


def test_classical_codes(F5):
    D = full_D(F5)
    C0 = classical_CL(D, Divisor.zero(F5))
    assert C0.k == 1 and min_distance(C0).symbol == 5
    big = classical_CL(D, parse_divisor("6*(inf)", F5))
    assert big.k == 5
    w = d_special_differential(D)
    assert classical_COmega_residue(D, Divisor.zero(F5), w).k == 4
    assert classical_COmega_residue(D, parse_divisor("2*(inf)", F5), w).k == 2


def test_residue_code_random():
    rng = random.Random(4)
    for _ in range(20):
        F = field_create(rng.choice((3, 5)))
        D = random_rational_divisor(F, rng, rng.randint(1, F.q))
        outside = [p for p in [Place.infinity(F)] + [Place.rational(F, a) for a in range(F.q)] if p not in D]
        E = Divisor(F, [(p, rng.randint(-1, 3)) for p in rng.sample(outside, min(2, len(outside)))])
        w = d_special_differential(D)
        C = classical_COmega_residue(D, E, w)  # asserts equality with C_L(D, (w) + D - E)
        assert C.same_space(dual_code(classical_CL(D, E)))


def test_rank_one_distance_bounds():
    rng = random.Random(6)
    for _ in range(20):
        F = field_create(rng.choice((3, 5)))
        D = random_rational_divisor(F, rng, rng.randint(2, F.q))
        E = Divisor.of_place(Place.infinity(F), rng.randint(0, len(D) - 1))
        C = classical_CL(D, E)
        d = min_distance(C)
        assert d.symbol >= len(D) - E.degree
        dd = min_distance(dual_code(C))
        if dd.symbol is not None:
            assert dd.symbol >= E.degree + 2


def test_min_distance_matches_enumeration():
    rng = np.random.default_rng(3)
    for q, k, n, r in [(2, 4, 6, 1), (3, 3, 3, 2), (5, 2, 4, 1), (4, 3, 3, 2)]:
        F = field_create(*{4: (2, 2)}.get(q, (q,)))
        while True:
            G = rng.integers(0, q, size=(k, n * r))
            if linalg.rank(F, G) == k:
                break
        C = LinearCode(F, G, r)
        d = min_distance(C)
        assert (d.symbol, d.block) == weight_enumeration(F, G.tolist(), r)
        assert np.count_nonzero(encode(C, d.symbol_witness)) == d.symbol


def test_min_distance_interval_when_over_budget(F5):
    C = build_code_F(full_D(F5), iota(F5, "2*(inf)", 2))
    d = min_distance(C, budget=100)
    assert not d.exact
    lo, hi = d.symbol
    assert lo <= 3 <= hi


def test_repetition_code():
    F = field_create(3)
    C = LinearCode(F, [[1] * 7])
    assert min_distance(C).symbol == 7


def test_erasure_decoding(F5):
    C = build_code_F(full_D(F5), iota(F5, "2*(inf)"))
    msg = [3, 1, 4]
    word = encode(C, msg)
    assert list(erasure_decode(C, word, []).message) == msg
    for er in combinations(range(5), 2):
        res = erasure_decode(C, word, er)
        assert res.ok and list(res.message) == msg
    d = min_distance(C)
    support = [i for i, a in enumerate(encode(C, d.symbol_witness)) if a]
    assert len(support) == 3
    assert not erasure_decode(C, word, support).ok


def test_matrix_text_round_trip(F5):
    C = build_code_F(full_D(F5), iota(F5, "2*(inf)", 2))
    text = C.format_matrix()
    assert text.splitlines()[0] == "5 6 10 2 5"
    back = parse_matrix(text)
    assert back.same_space(C) and back.r == 2


def test_margin_element(F5):
    D = full_D(F5)
    g = iota(F5, "2*(inf)", 2)
    nowhere = (RationalFunction.one(F5), RationalFunction.one(F5))
    assert margin_element(nowhere, D, g) == AdelicMatrix.identity(F5, 2)
    assert log_transform(g, nowhere, D) == g
    f = (parse_rational("x^2+1", F5), RationalFunction.zero(F5))
    chi = margin_element(f, D, g)
    for p in D.support:
        d1 = 1 if p.root in (2, 3) else 0
        pi_inv = p.uniformizer.inverse()
        expected = ((pi_inv if d1 else RationalFunction.one(F5), RationalFunction.zero(F5)),
                    (RationalFunction.zero(F5), pi_inv))
        assert chi.local(p) == expected
    assert degree(log_transform(g, f, D)) == degree(g) - zero_count(f, D)


def test_log_transform_random():
    rng = random.Random(12)
    F = field_create(5)
    D = full_D(F)
    for _ in range(20):
        g = random_balanced(F, rng.randint(1, 2), D, rng, vmin=-1, vmax=3)
        S = h0_basis(g)
        if not S.dim:
            continue
        f = S.combination([rng.randrange(5) for _ in range(S.dim)])
        if all(c.is_zero() for c in f):
            continue
        h = log_transform(g, f, D)
        assert is_section(h, f)
        assert degree(h) == degree(g) - zero_count(f, D)


def test_weight_formula():
    rng = random.Random(1)
    F = field_create(5)
    D = full_D(F)
    for _ in range(10):
        g = random_balanced(F, 2, D, rng, vmin=-1, vmax=3)
        C = build_code_F(D, g)
        for _ in range(5):
            if not C.k:
                break
            msg = [rng.randrange(5) for _ in range(C.k)]
            f = section_of_message(C, msg)
            assert np.count_nonzero(encode(C, msg)) == 2 * len(D) - zero_count(f, D)


def test_audit_rank_one_passes(F5):
    rep = distance_bound_audit(full_D(F5), iota(F5, "2*(inf)"))
    assert not rep.violations
    statuses = {c.name: c.status for c in rep.checks}
    assert statuses["distance_bound"] == "pass"
    assert statuses["singleton_upper"] == "pass" and statuses["singleton_lower"] == "pass"


def test_audit_rank_two_violation(F5):
    rep = distance_bound_audit(full_D(F5), iota(F5, "2*(inf)", 2))
    names = {c.name for c in rep.violations}
    assert "distance_bound" in names
    assert rep.distance.symbol == 3
    # the witness is a section with one zero component
    assert any(c.is_zero() for c in rep.witness_section)
    assert np.count_nonzero(rep.witness_codeword) == 3
    text = rep.to_text()
    assert "check.distance_bound = fail" in text and text.endswith(f"violations = {len(rep.violations)}\n")


def test_audit_not_semistable_marks_na(F5):
    rep = distance_bound_audit(full_D(F5), split_matrix(F5, (2, 0)))
    assert not is_semistable(split_matrix(F5, (2, 0)))[0]
    assert {c.name: c.status for c in rep.checks}["distance_bound"] == "n/a"


def test_unbalanced_rejected(F5):
    D = full_D(F5)
    g = AdelicMatrix(F5, 1, {Place.rational(F5, 0): ((parse_rational("x", F5),),)})
    with pytest.raises(ValueError):
        build_code_F(D, g)
