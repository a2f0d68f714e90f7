"""Seeded random elements for the property suites."""

from __future__ import annotations

import random

from .coeff import Scalar
from .superpoly import SuperPolynomial


def random_superpoly(
    rng: random.Random,
    n: int,
    terms: int = 5,
    max_x: int = 1,
    max_p: int = 2,
    max_xi: int | None = None,
    h_max: int = 0,
) -> SuperPolynomial:
    """Random sparse polynomial with small integer coefficients."""
    if max_xi is None:
        max_xi = min(2, n)
    F = SuperPolynomial.zero(n)
    for _ in range(terms):
        xexp = tuple(rng.randint(0, max_x) for _ in range(n))
        pexp = [0] * n
        for _ in range(rng.randint(0, max_p)):
            pexp[rng.randrange(n)] += 1
        xi = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, max_xi))))
        coeff = Scalar.h(rng.randint(0, h_max), rng.randint(-3, 3)) if h_max else Scalar.rational(rng.randint(-3, 3))
        F = F + SuperPolynomial.monomial(n, xexp, tuple(pexp), xi, coeff=coeff)
    return F


def random_parity_homogeneous(
    rng: random.Random, n: int, parity: int, terms: int = 4, max_p: int = 2
) -> SuperPolynomial:
    """Random polynomial whose every term has Grassmann parity `parity`."""
    F = SuperPolynomial.zero(n)
    for _ in range(terms):
        xexp = tuple(rng.randint(0, 1) for _ in range(n))
        pexp = [0] * n
        for _ in range(rng.randint(0, max_p)):
            pexp[rng.randrange(n)] += 1
        choices = [k for k in range(parity, n + 1, 2)]
        size = rng.choice(choices)
        xi = tuple(sorted(rng.sample(range(1, n + 1), size)))
        F = F + SuperPolynomial.monomial(n, xexp, tuple(pexp), xi, coeff=rng.randint(-3, 3))
    return F


def random_xi_poly(rng: random.Random, n: int, terms: int = 5) -> SuperPolynomial:
    """Random polynomial in the Grassmann variables only."""
    F = SuperPolynomial.zero(n)
    for _ in range(terms):
        xi = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, n))))
        F = F + SuperPolynomial.monomial(n, xi=xi, coeff=rng.randint(-3, 3))
    return F


def random_xi_homogeneous(rng: random.Random, n: int, degree: int, terms: int = 4) -> SuperPolynomial:
    F = SuperPolynomial.zero(n)
    for _ in range(terms):
        xi = tuple(sorted(rng.sample(range(1, n + 1), degree)))
        F = F + SuperPolynomial.monomial(n, xi=xi, coeff=rng.randint(-3, 3))
    return F


def random_bidegree(
    rng: random.Random, n: int, k: int, kappa: int, terms: int = 4, max_x: int = 1
) -> SuperPolynomial:
    """Random polynomial homogeneous of bidegree (k in p, kappa in xi)."""
    F = SuperPolynomial.zero(n)
    for _ in range(terms):
        xexp = tuple(rng.randint(0, max_x) for _ in range(n))
        pexp = [0] * n
        for _ in range(k):
            pexp[rng.randrange(n)] += 1
        xi = tuple(sorted(rng.sample(range(1, n + 1), kappa)))
        F = F + SuperPolynomial.monomial(n, xexp, tuple(pexp), xi, coeff=rng.randint(-3, 3))
    return F
