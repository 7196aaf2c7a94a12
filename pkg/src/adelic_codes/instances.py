"""Seeded random instances for property tests, self-tests and the acceptance suite."""

from __future__ import annotations

import random

from .adele import AdelicMatrix, det, idele_of_divisor, is_balanced, is_local_unit_matrix
from .curve import Divisor, Place, ProjectiveLine
from .gf import Field, Poly, RationalFunction


def random_poly(F: Field, rng: random.Random, deg: int) -> Poly:
    return Poly(F, [rng.randrange(F.q) for _ in range(deg + 1)])


def random_unit(F: Field, p: Place, rng: random.Random, deg: int = 1) -> RationalFunction:
    """A random rational function of valuation zero at p."""
    while True:
        if p.is_infinite:
            d = rng.randint(0, deg)
            num = Poly(F, [rng.randrange(F.q) for _ in range(d)] + [rng.randrange(1, F.q)])
            den = Poly(F, [rng.randrange(F.q) for _ in range(d)] + [1])
        else:
            num = random_poly(F, rng, deg)
            den = Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, deg))] + [1])
        if not num or not den:
            continue
        f = RationalFunction(num, den)
        if p.is_infinite or (num % p.poly and den % p.poly):
            return f


def random_local_matrix(F: Field, p: Place, r: int, rng: random.Random, vmin=-4, vmax=4, zero_prob=0.25):
    """A random invertible r x r matrix whose nonzero entries have valuations in [vmin, vmax]."""
    pi = p.uniformizer
    while True:
        m = []
        for _ in range(r):
            row = []
            for _ in range(r):
                if r > 1 and rng.random() < zero_prob:
                    row.append(RationalFunction.zero(F))
                else:
                    row.append(pi ** rng.randint(vmin, vmax) * random_unit(F, p, rng))
            m.append(tuple(row))
        if not det(m).is_zero():
            return tuple(m)


def random_local_unit_matrix(F: Field, p: Place, r: int, rng: random.Random, vmax=2):
    """A random element of GL_r(O_p): integral entries, unit determinant."""
    while True:
        m = random_local_matrix(F, p, r, rng, 0, vmax)
        if is_local_unit_matrix(m, p):
            return m


def random_places(F: Field, rng: random.Random, count: int, exclude=(), max_degree=2):
    line = ProjectiveLine(F)
    pool = [Place.infinity(F)] + line.rational_places()
    for d in range(2, max_degree + 1):
        pool += line.places_of_degree(d)[:6]
    pool = [p for p in pool if p not in set(exclude)]
    return rng.sample(pool, min(count, len(pool)))


def random_adelic_matrix(F: Field, r: int, rng: random.Random, max_places=3, vmin=-4, vmax=4, exclude=()):
    places = random_places(F, rng, rng.randint(1, max_places), exclude)
    return AdelicMatrix(F, r, {p: random_local_matrix(F, p, r, rng, vmin, vmax) for p in places})


def random_rational_divisor(F: Field, rng: random.Random, n: int) -> Divisor:
    pts = rng.sample(ProjectiveLine(F).rational_places(), n)
    return Divisor.sum_of(pts)


def random_balanced(F: Field, r: int, D: Divisor, rng: random.Random, max_places=2, vmin=-2, vmax=2):
    """A random g whose support avoids D (so it is balanced along D), plus sometimes a unimodular
    component at a point of D."""
    g = random_adelic_matrix(F, r, rng, max_places, vmin, vmax, exclude=D.support)
    if rng.random() < 0.5:
        p = rng.choice(D.support)
        while True:
            m = random_local_matrix(F, p, r, rng, 0, 1)
            if is_balanced(AdelicMatrix(F, r, {p: m}), D):
                break
        sup = g.support
        sup[p] = m
        g = AdelicMatrix(F, r, sup)
    return g


def split_matrix(F: Field, degrees, place: Place | None = None) -> AdelicMatrix:
    """diag(iota_{a_1 P}, ..., iota_{a_r P}) with P = infinity by default."""
    place = place or Place.infinity(F)
    return AdelicMatrix.diagonal([idele_of_divisor(Divisor.of_place(place, a), 1) for a in degrees])
