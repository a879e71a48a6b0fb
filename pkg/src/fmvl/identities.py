"""Equational laws of unital commutative fMV-algebras, as formula pairs.

Laws with scalar parameters are instantiated for concrete rationals.  The
formally-real identity is one that holds in ``[0,1]`` but not in every
fMV-algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .formula import ZERO, Formula, Neg, Prod, Scal, Var, odot, ominus, vee, wedge

__all__ = ["Law", "pmv_laws", "rmv_laws", "fmv_laws", "commutativity_law", "formally_real_identity",
           "semiprime_quasi_identity", "standard_laws"]


class Law(NamedTuple):
    name: str
    lhs: Formula
    rhs: Formula
    n: int


x, y, z = Var(1), Var(2), Var(3)


def pmv_laws() -> list[Law]:
    meet = wedge(x, y)
    return [
        Law("PMV1", Prod(z, odot(x, Neg(meet))), odot(Prod(z, x), Neg(Prod(z, meet))), 3),
        Law("PMV2", Prod(odot(x, Neg(meet)), z), odot(Prod(x, z), Neg(Prod(meet, z))), 3),
        Law("PMV3", Prod(x, Prod(y, z)), Prod(Prod(x, y), z), 3),
    ]


def rmv_laws(alpha, beta) -> list[Law]:
    a, b = Fraction(alpha), Fraction(beta)
    return [
        Law("RMV1", Scal(a, odot(x, Neg(y))), odot(Scal(a, x), Neg(Scal(a, y))), 2),
        Law("RMV2", Scal(max(Fraction(0), a - b), x), odot(Scal(a, x), Neg(Scal(b, x))), 1),
        Law("RMV3", Scal(a, Scal(b, x)), Scal(a * b, x), 1),
        Law("RMV4", Scal(1, x), x, 1),
    ]


def fmv_laws(alpha) -> list[Law]:
    a = Fraction(alpha)
    return [
        Law("fMV3-left", Scal(a, Prod(x, y)), Prod(Scal(a, x), y), 2),
        Law("fMV3-right", Scal(a, Prod(x, y)), Prod(x, Scal(a, y)), 2),
    ]


def commutativity_law() -> Law:
    """``x * y = (x ^ y) * (y v x)``."""
    return Law("COMM", Prod(x, y), Prod(wedge(x, y), vee(y, x)), 2)


def formally_real_identity() -> Law:
    """Six-variable identity true in ``[0,1]``; variables are x1 x2 y1 y2 z1 z2 in that order."""
    x1, x2, y1, y2, z1, z2 = (Var(i) for i in range(1, 7))
    lhs = wedge(
        wedge(ominus(Prod(x1, z1), Prod(y1, z2)), ominus(Prod(x2, z2), Prod(y2, z1))),
        ominus(Prod(y1, y2), Prod(x1, x2)),
    )
    return Law("FR", lhs, ZERO, 6)


def semiprime_quasi_identity() -> tuple[tuple[Formula, Formula], tuple[Formula, Formula]]:
    """``x * x = 0  =>  x = 0``."""
    return (Prod(x, x), ZERO), (x, ZERO)


def standard_laws(scalars=(0, Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), 1)) -> list[Law]:
    """Every law above, the scalar ones for all pairs drawn from ``scalars``."""
    laws = pmv_laws() + [commutativity_law()]
    for a in scalars:
        laws += [law._replace(name=f"{law.name}[a={a}]") for law in fmv_laws(a)]
        for b in scalars:
            laws += [law._replace(name=f"{law.name}[a={a},b={b}]") for law in rmv_laws(a, b)]
    return laws
