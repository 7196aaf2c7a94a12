import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adelic_codes.curve import (
    Differential,
    Divisor,
    Place,
    PoleError,
    ProjectiveLine,
    check_rational_divisor,
    d_special_differential,
    differential_divisor,
    evaluate,
    parse_divisor,
    parse_place,
    principal_divisor,
    residue,
    riemann_roch_basis,
    valuation,
)
from adelic_codes.gf import ParseError, Poly, RationalFunction, field_create, parse_poly, parse_rational
from adelic_codes.instances import random_poly


def F5():
    return field_create(5)


def test_valuations():
    F = F5()
    x2 = parse_rational("x^2", F)
    assert valuation(x2, Place.rational(F, 0)) == 2
    assert valuation(x2, Place.infinity(F)) == -2
    G = field_create(2)
    P = Place(G, parse_poly("x^2+x+1", G))
    assert valuation(parse_rational("(x+1)/(x^2+x+1)", G), P) == -1


def test_evaluate():
    F = F5()
    assert evaluate(parse_rational("(x^2+1)/(x+2)", F), Place.rational(F, 1)) == 4
    assert evaluate(parse_rational("(x^2+1)/(x^2+3)", F), Place.infinity(F)) == 1
    with pytest.raises(PoleError):
        evaluate(parse_rational("1/x", F), Place.rational(F, 0))


def test_evaluate_degree_two_place_gives_residue_class():
    G = field_create(2)
    P = Place(G, parse_poly("x^2+x+1", G))
    assert evaluate(parse_rational("x^3", G), P) == Poly.const(G, 1)


def test_place_rejects_reducible():
    F = F5()
    with pytest.raises(ValueError):
        Place(F, parse_poly("x^2-1", F))


def test_place_format_round_trip():
    F = field_create(3, 2)
    line = ProjectiveLine(F)
    for p in line.rational_places() + line.places_of_degree(2)[:5] + [Place.infinity(F)]:
        assert parse_place(p.format(), F) == p


def test_riemann_roch_basis_examples():
    F = F5()
    basis = riemann_roch_basis(parse_divisor("2*(inf)", F))
    assert set(basis) == {parse_rational(s, F) for s in ("1", "x", "x^2")}
    assert riemann_roch_basis(parse_divisor("-1*(x)", F)) == []
    E = parse_divisor("2*(x) - 1*(inf)", F)
    basis = riemann_roch_basis(E)
    assert len(basis) == 2
    for f in basis:
        assert (principal_divisor(f) + E).degree >= 0
        assert valuation(f, Place.rational(F, 0)) >= -2
        assert valuation(f, Place.infinity(F)) >= 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["(x)", "(x-1)", "(inf)", "(x^2+2)"]), st.integers(-3, 3)), max_size=4))
def test_riemann_roch_dimension(terms):
    F = F5()
    E = Divisor(F, [])
    for text, c in terms:
        E = E + Divisor.of_place(parse_place(text, F), c)
    basis = riemann_roch_basis(E)
    assert len(basis) == max(0, E.degree + 1)
    for f in basis:
        d = principal_divisor(f) + E
        assert all(c >= 0 for _, c in d.items())


def test_divisor_parse_and_format():
    F = F5()
    D = parse_divisor("(x) + 2*(x-1) - (inf)", F)
    assert D.degree == 2
    assert parse_divisor(D.format(), F) == D
    assert parse_divisor("0", F) == Divisor.zero(F)
    with pytest.raises(ParseError):
        parse_divisor("(x) + (x", F)
    with pytest.raises(ParseError):
        parse_divisor("(x) (x-1)", F)


def test_principal_divisors_have_degree_zero():
    rng = random.Random(3)
    for q in (2, 3, 5):
        F = field_create(q)
        for _ in range(30):
            num = random_poly(F, rng, rng.randint(0, 5))
            den = random_poly(F, rng, rng.randint(0, 5))
            if not num or not den:
                continue
            assert principal_divisor(RationalFunction(num, den)).degree == 0


def test_differential_divisors():
    F = F5()
    dx = Differential(RationalFunction.one(F))
    assert differential_divisor(dx) == parse_divisor("-2*(inf)", F)
    dx_x = Differential(parse_rational("1/x", F))
    assert differential_divisor(dx_x) == parse_divisor("-1*(x) - 1*(inf)", F)
    w = Differential(parse_rational("1/x + 1/(x-1)", F))
    assert differential_divisor(w) == parse_divisor("(x-3) - (x) - (x-1) - (inf)", F)


def test_residues():
    F = F5()
    dx_x = Differential(parse_rational("1/x", F))
    assert residue(dx_x, Place.rational(F, 0)) == 1
    assert residue(dx_x, Place.infinity(F)) == 4
    assert residue(Differential(RationalFunction.one(F)), Place.rational(F, 0)) == 0


def test_residue_theorem():
    rng = random.Random(7)
    F = F5()
    pts = [Place.rational(F, a) for a in range(5)] + [Place.infinity(F)]
    for _ in range(40):
        num = random_poly(F, rng, rng.randint(0, 4))
        # denominator split over F_5 so all residues live at rational places
        den = Poly.const(F, 1)
        for _ in range(rng.randint(1, 4)):
            den = den * Poly(F, [rng.randrange(5), 1])
        if not num:
            continue
        w = Differential(RationalFunction(num, den))
        assert sum(residue(w, p) for p in pts) % 5 == 0


def test_d_special_differential():
    F = F5()
    w = d_special_differential(parse_divisor("(x)", F))
    assert w.h == parse_rational("1/x", F)
    D = parse_divisor("(x) + (x-1)", F)
    w = d_special_differential(D)
    assert differential_divisor(w) == parse_divisor("(x-3) - (x) - (x-1) - (inf)", F)
    for p in check_rational_divisor(D):
        assert residue(w, p) == 1
    with pytest.raises(ValueError, match="repeated"):
        d_special_differential(parse_divisor("(x) + (x)", F))


def test_rational_divisor_checks():
    F = F5()
    with pytest.raises(ValueError):
        check_rational_divisor(parse_divisor("(x) + (inf)", F))
    with pytest.raises(ValueError):
        check_rational_divisor(parse_divisor("(x^2+2)", F))


def test_places_of_degree_counts():
    F = field_create(3)
    line = ProjectiveLine(F)
    assert len(line.rational_places()) == 3
    assert len(line.places_of_degree(2)) == 3
    assert line.genus == 0
