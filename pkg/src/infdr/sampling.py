"""Seeded random generators for the property harnesses."""
from __future__ import annotations

import random
from fractions import Fraction

from .core import Poly, Var, monomials_up_to
from .infinitesimal import InfElement, inf_monomials


def rational(rng: random.Random, size: int = 5) -> Fraction:
    num = rng.randint(-size, size)
    den = rng.choice((1, 1, 1, 2, 3))
    return Fraction(num, den)


def nonzero_rational(rng: random.Random, size: int = 5) -> Fraction:
    while True:
        c = rational(rng, size)
        if c:
            return c


def poly_in(rng: random.Random, variables, degree: int, terms: int = 4) -> Poly:
    """Random polynomial in ``variables`` of total degree <= ``degree``."""
    pool = list(monomials_up_to(variables, degree))
    picks = rng.sample(pool, min(terms, len(pool)))
    return Poly({mono: rational(rng) for mono in picks})


def base_poly(rng: random.Random, n: int, degree: int, terms: int = 4) -> Poly:
    return poly_in(rng, [Var.base(j) for j in range(1, n + 1)], degree, terms)


def inf_element(rng: random.Random, n: int, m: int, degree: int, terms: int = 4) -> InfElement:
    """Random normal-form element at level m with coefficients of degree <= ``degree``."""
    monos = inf_monomials(n, m)
    picks = rng.sample(monos, min(terms, len(monos)))
    return InfElement(n, m, {mono: base_poly(rng, n, degree, 3) for mono in picks})


def raw_inf_poly(rng: random.Random, n: int, m: int, degree: int, terms: int = 5) -> Poly:
    """Random raw polynomial in x and y variables (not reduced)."""
    variables = [Var.base(j) for j in range(1, n + 1)]
    variables += [Var.inf(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    return poly_in(rng, variables, degree, terms)


def monotone_map_values(rng: random.Random, source: int, target: int) -> tuple:
    return tuple(sorted(rng.randint(0, target) for _ in range(source + 1)))
