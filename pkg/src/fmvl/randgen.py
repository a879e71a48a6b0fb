"""Seeded random formulas, polynomials, ISD matrices and axiom instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .compiler import ISDSpec
from .formula import (
    ZERO, Formula, Neg, Oplus, Prod, Scal, Var, imp, iff, nabla, odot, ominus, one, substitute, vee, wedge,
)
from .polynomial import Polynomial
from .proofs import AxiomSchema

__all__ = [
    "FormulaParams", "PolyParams", "DEFAULT_WEIGHTS", "random_scalar", "random_formula",
    "random_poly", "random_isd", "random_axiom_instance",
]

DEFAULT_WEIGHTS = {
    "var": 4, "zero": 1, "one": 1,
    "neg": 2, "oplus": 3, "prod": 3, "scal": 2,
    "imp": 1, "odot": 1, "ominus": 1, "vee": 1, "wedge": 1, "iff": 1, "nabla": 1,
}
LEAVES = ("var", "zero", "one")
PMV_CONNECTIVES = ("var", "zero", "neg", "oplus", "prod")


@dataclass
class FormulaParams:
    depth: int = 6
    n: int = 3
    max_den: int = 8
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))


@dataclass
class PolyParams:
    n: int = 2
    max_degree: int = 4
    max_coef: int = 3
    max_den: int = 8
    max_terms: int = 3


def random_scalar(rng: random.Random, max_den: int = 8) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def _pick(rng, weights, names):
    names = [k for k in names if weights.get(k, 0) > 0]
    return rng.choices(names, [weights[k] for k in names])[0]


def random_formula(rng: random.Random, params: FormulaParams | None = None) -> Formula:
    """Formula of depth at most ``params.depth`` over ``Var(1..n)``."""
    p = params or FormulaParams()

    def go(depth):
        if depth <= 1:
            kind = _pick(rng, p.weights, LEAVES)
        else:
            kind = _pick(rng, p.weights, p.weights.keys())
        if kind == "var":
            return Var(rng.randint(1, p.n))
        if kind == "zero":
            return ZERO
        if kind == "one":
            return one()
        if kind == "neg":
            return Neg(go(depth - 1))
        if kind in ("scal", "nabla"):
            alpha = random_scalar(rng, p.max_den)
            return (Scal if kind == "scal" else nabla)(alpha, go(depth - 1))
        build = {"oplus": Oplus, "prod": Prod, "imp": imp, "odot": odot, "ominus": ominus,
                 "vee": vee, "wedge": wedge, "iff": iff}[kind]
        return build(go(depth - 1), go(depth - 1))

    return go(p.depth)


def random_poly(rng: random.Random, params: PolyParams | None = None) -> Polynomial:
    """Between one and ``max_terms`` monomials with coefficients in ``[-max_coef, max_coef]``."""
    p = params or PolyParams()
    terms = {}
    for _ in range(rng.randint(1, p.max_terms)):
        exps = [0] * p.n
        for _ in range(rng.randint(0, p.max_degree)):
            exps[rng.randrange(p.n)] += 1
        den = rng.randint(1, p.max_den)
        terms[tuple(exps)] = Fraction(rng.randint(-p.max_coef * den, p.max_coef * den), den)
    return Polynomial(p.n, terms)


def random_isd(rng: random.Random, params: PolyParams | None = None, max_rows: int = 3, max_cols: int = 3) -> ISDSpec:
    p = params or PolyParams()
    m, k = rng.randint(1, max_rows), rng.randint(1, max_cols)
    return ISDSpec(p.n, tuple(tuple(random_poly(rng, p) for _ in range(k)) for _ in range(m)))


def random_axiom_instance(rng: random.Random, axiom: AxiomSchema, params: FormulaParams | None = None) -> Formula:
    """Instantiate ``axiom`` with random formulas and scalars satisfying its side condition."""
    p = params or FormulaParams(depth=5)
    subst = {}
    for key in ("?phi", "?psi", "?chi"):
        subst[key] = random_formula(rng, p)
    a, b = random_scalar(rng, p.max_den), random_scalar(rng, p.max_den)
    subst["?a"], subst["?b"] = a, b
    if axiom.name == "R2":
        subst["?c"] = max(Fraction(0), a - b)
    elif axiom.name == "R3":
        subst["?c"] = a * b
    elif axiom.name == "R4":
        subst["?a"] = Fraction(1)
    return substitute(axiom.schema, subst)
