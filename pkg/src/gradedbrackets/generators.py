"""Seeded random inputs for the identity suites.

Everything draws from a ``random.Random`` instance so a seed fixes the whole
sequence of cases. ``degree`` always means Lie degree (tensor degree minus
one), so degree 0 gives sections and degree -1 gives functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .grassmann import GrassmannElement, Space
from .jacobi import FirstOrderOp
from .multilinear import FnMultilinearOp, MultilinearOp, skew_projector
from .scalar import Chart, Scalar


@dataclass
class SuiteConfig:
    suite: str = ""
    seed: int = 0
    cases: int = 100
    max_tensor_degree: int = 3
    max_coeff_degree: int = 2
    max_terms: int = 3
    chart: Chart | None = None
    options: dict = field(default_factory=dict)

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{self.suite}:{salt}")


def _coefficient(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 1, 1, 2])
    return Fraction(num, den)


def random_scalar(rng: random.Random, chart: Chart, max_degree: int = 2, terms: int = 3, coords=None) -> Scalar:
    """Sparse polynomial with up to ``terms`` monomials of degree ``<= max_degree``."""
    coords = list(coords if coords is not None else chart.base)
    out = chart.zero()
    for _ in range(rng.randint(1, terms)):
        m = chart.const(_coefficient(rng))
        if coords:
            for _ in range(rng.randint(0, max_degree)):
                m = m * chart.var(rng.choice(coords))
        out = out + m
    return out


def random_element(rng: random.Random, space: Space, degree: int, max_coeff_degree: int = 2,
                   max_terms: int = 3, coords=None) -> GrassmannElement:
    """Homogeneous element of Lie degree ``degree`` (tensor degree ``degree + 1``)."""
    k = degree + 1
    if k < 0 or k > space.rank:
        return space.zero()
    basis = list(combinations(range(space.rank), k))
    terms = {}
    for idx in rng.sample(basis, min(len(basis), rng.randint(1, max_terms))):
        terms[idx] = random_scalar(rng, space.chart, max_coeff_degree, 2, coords)
    return GrassmannElement(space, terms)


def random_form(rng: random.Random, space: Space, tensor_degree: int, max_coeff_degree: int = 2,
                max_terms: int = 3, coords=None) -> GrassmannElement:
    return random_element(rng, space, tensor_degree - 1, max_coeff_degree, max_terms, coords)


def random_multilinear(rng: random.Random, dim: int, degree: int, skew: bool = True,
                       density: float = 0.5) -> MultilinearOp:
    shape = (dim,) * (degree + 2)
    t = np.empty(shape, dtype=object)
    for idx in np.ndindex(shape):
        t[idx] = Fraction(rng.randint(-2, 2)) if rng.random() < density else Fraction(0)
    op = MultilinearOp(t, degree)
    return skew_projector(op) if skew else op


def random_first_order_fn(rng: random.Random, chart: Chart, arity: int, max_coeff_degree: int = 1,
                          terms: int = 3) -> FnMultilinearOp:
    """Skew sum of ``c(x) * prod_j D_j f_j`` with each ``D_j`` the identity or
    a coordinate derivative, at most one identity slot per term."""
    coords = list(chart.base)
    spec = []
    for _ in range(rng.randint(1, terms)):
        c = random_scalar(rng, chart, max_coeff_degree, 2)
        ds = [rng.choice(coords) for _ in range(arity)]
        if arity and rng.random() < 0.5:
            ds[rng.randrange(arity)] = None
        spec.append((c, ds))
    return FnMultilinearOp.from_terms(chart, arity, spec)


def random_first_order_op(rng: random.Random, space: Space, degree: int, max_coeff_degree: int = 2,
                          max_terms: int = 2) -> FirstOrderOp:
    """``(A1, A2)`` of Lie degree ``degree``."""
    return FirstOrderOp(
        random_element(rng, space, degree, max_coeff_degree, max_terms),
        random_element(rng, space, degree - 1, max_coeff_degree, max_terms),
    )


def random_batch(config: SuiteConfig, space: Space, degree: int, count: int | None = None) -> list[GrassmannElement]:
    rng = config.rng(f"batch:{degree}")
    n = config.cases if count is None else count
    return [random_element(rng, space, degree, config.max_coeff_degree, config.max_terms) for _ in range(n)]
