"""Seeded random polynomials and enveloping-algebra elements for property checks."""

from __future__ import annotations

import random
from typing import Sequence

from .poly import CPoly, Registry
from .scalar import GScalar

_COEFFS = (1, -1, 2, -2, 3, GScalar(1, 1), GScalar(0, 1), GScalar(1, 2) / 2)


def random_scalar(rng: random.Random, gaussian: bool = True) -> GScalar:
    pool = _COEFFS if gaussian else _COEFFS[:5]
    return GScalar(0) + rng.choice(pool)


def random_monomial(rng: random.Random, nvars: int, variables: Sequence[int], degree: int) -> tuple:
    exps = [0] * nvars
    for _ in range(degree):
        exps[rng.choice(variables)] += 1
    return tuple(exps)


def random_poly(
    rng: random.Random,
    registry: Registry,
    variables: Sequence[int] | None = None,
    max_degree: int = 3,
    max_terms: int = 3,
    gaussian: bool = True,
) -> CPoly:
    """Nonzero polynomial in ``variables`` of total degree at most ``max_degree``."""
    variables = list(range(len(registry))) if variables is None else list(variables)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(0, max_degree) if variables else 0
            terms[random_monomial(rng, len(registry), variables, d)] = random_scalar(rng, gaussian)
        p = CPoly(registry, terms)
        if p:
            return p


def random_env_element(rng, alg, generators=None, max_degree=3, max_terms=3, gaussian=True):
    """Random element supported on normal monomials in ``generators``."""
    gens = list(range(alg.ngens)) if generators is None else list(generators)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(0, max_degree) if gens else 0
            terms[random_monomial(rng, alg.ngens, gens, d)] = random_scalar(rng, gaussian)
        e = alg.element(terms)
        if e:
            return e
