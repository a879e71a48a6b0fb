"""Compile truncated polynomials and inf-sup matrices into formulas.

For a rational polynomial ``p`` the compiler returns a formula whose term
function is ``clamp(p)`` on the unit cube.  The polynomial is first split
into unit-bounded summands; the construction then peels the last summand
``h`` off ``p = g + h`` using two identities valid on ``[0,1]^n``:

* ``0 < h <= 1``:   ``rho(g + h) = (rho(g) (+) h) (.) neg rho(-g)``
* ``-1 <= h < 0``:  ``rho(g + h) = (rho(g - 1) (+) neg(-h)) (.) rho(g)``

where ``(+)`` is truncated sum and ``(.)`` is Łukasiewicz conjunction.
``rho(g - 1)`` is zero when no summand of ``g`` is positive; otherwise the
``-1`` is absorbed by the first positive constant, or the first positive
monomial ``h0`` is split off and the first identity is applied to
``(g - h0 - 1) + h0``.  Every recursive call sees strictly fewer summands.

The output is a DAG: equal summand lists compile to one shared subformula,
so the formula's size as a tree can be exponential in the summand count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .formula import ZERO, Formula, Neg, Oplus, Prod, Scal, Var, odot, one, vee, wedge
from .models import GridSpec, Verdict, _chunks, eval_std_many
from .polynomial import Polynomial, Summand, clamp, decompose, eval_poly, grlex_key, poly_from_json, poly_to_json

__all__ = [
    "ISDSpec", "compile_truncated", "compile_isd", "verify_compile", "isd_value", "monomial_formula",
]


@dataclass(frozen=True)
class ISDSpec:
    """``max_i min_j clamp(rows[i][j])`` over ``[0,1]^n``."""

    n: int
    rows: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ValueError("an ISD matrix needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ISD rows must all have the same length")
        if any(q.n != self.n for r in rows for q in r):
            raise ValueError(f"all entries must have ambient dimension {self.n}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @classmethod
    def from_json(cls, obj) -> ISDSpec:
        n = obj["n"]
        return cls(n, tuple(tuple(poly_from_json(q, n) for q in row) for row in obj["rows"]))

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[poly_to_json(q) for q in row] for row in self.rows]}


def isd_value(spec: ISDSpec, point: Sequence) -> Fraction:
    return max(min(clamp(eval_poly(q, point)) for q in row) for row in spec.rows)


def monomial_formula(exps: Sequence[int]) -> Formula:
    """Left-nested product ``x1 * x1 * x2 ...``; the empty product is ``one``."""
    factors = [Var(i + 1) for i, e in enumerate(exps) for _ in range(e)]
    if not factors:
        return one()
    acc = factors[0]
    for v in factors[1:]:
        acc = Prod(acc, v)
    return acc


def _kind(s: Summand):
    return (0,) if s.exps is None else (1, grlex_key(s.exps))


class _Compiler:
    def __init__(self):
        self.memo: dict[tuple, Formula] = {}
        self.monomials: dict[tuple, Formula] = {}

    def base(self, s: Summand) -> Formula:
        if s.coef < 0:
            return ZERO
        if s.exps is None:
            return Scal(s.coef, one())
        mono = self.monomials.get(s.exps)
        if mono is None:
            mono = self.monomials[s.exps] = monomial_formula(s.exps)
        return Scal(s.coef, mono)

    def rho(self, ss: tuple) -> Formula:
        got = self.memo.get(ss)
        if got is not None:
            return got
        m = len(ss)
        if m == 0:
            out = ZERO
        elif m == 1:
            out = self.base(ss[0])
        else:
            g, h = ss[:-1], ss[-1]
            if h.coef > 0:
                out = self.peel_positive(g, h, m)
            else:
                rho_g = self.sub(g, m)
                rho_g_minus_one = self.shifted(g, m)
                out = odot(Oplus(rho_g_minus_one, Neg(self.base(h.negated()))), rho_g)
        self.memo[ss] = out
        return out

    def sub(self, ss: tuple, bound: int) -> Formula:
        assert len(ss) < bound, "summand count must decrease"
        return self.rho(ss)

    def peel_positive(self, g: tuple, h: Summand, bound: int) -> Formula:
        rho_g = self.sub(g, bound)
        rho_neg_g = self.sub(tuple(s.negated() for s in g), bound)
        return odot(Oplus(rho_g, self.base(h)), Neg(rho_neg_g))

    def shifted(self, g: tuple, bound: int) -> Formula:
        """Formula for ``rho(g - 1)``."""
        positive = [i for i, s in enumerate(g) if s.coef > 0]
        if not positive:
            return ZERO
        consts = [i for i in positive if g[i].exps is None]
        if consts:
            j = consts[0]
            lowered = g[j].coef - 1
            rest = g[:j] + ((Summand(lowered, None),) if lowered else ()) + g[j + 1:]
            return self.sub(rest, bound)
        j = positive[0]
        g0 = tuple(sorted(g[:j] + g[j + 1:] + (Summand(Fraction(-1), None),), key=_kind))
        return self.peel_positive(g0, g[j], bound)


def _ordered(p: Polynomial) -> tuple:
    return tuple(sorted(decompose(p), key=_kind))


def compile_truncated(p: Polynomial, _compiler: _Compiler | None = None) -> Formula:
    """Formula whose term function on ``[0,1]^n`` is ``clamp(p)``.

    >>> from fmvl.polynomial import parse_poly
    >>> str(compile_truncated(parse_poly("1/2")))
    '(scal 1/2 (neg zero))'
    """
    return (_compiler or _Compiler()).rho(_ordered(p))


def compile_isd(spec: ISDSpec) -> Formula:
    """Join over rows of the meet over each row of the compiled entries."""
    comp = _Compiler()
    result = None
    for row in spec.rows:
        meet = None
        for q in row:
            f = compile_truncated(q, comp)
            meet = f if meet is None else wedge(meet, f)
        result = meet if result is None else vee(result, meet)
    return result


def verify_compile(target, f: Formula, grid: GridSpec) -> Verdict:
    """Compare ``f`` with ``clamp(target)`` (or the ISD value) at every grid point."""
    n = target.n
    if grid.n != n:
        raise ValueError(f"grid dimension {grid.n} differs from target dimension {n}")
    if isinstance(target, ISDSpec):
        expected = lambda pt: isd_value(target, pt)  # noqa: E731
    elif isinstance(target, Polynomial):
        expected = lambda pt: clamp(eval_poly(target, pt))  # noqa: E731
    else:
        raise TypeError(f"cannot verify against {type(target).__name__}")
    checked = 0
    for chunk in _chunks(grid.points()):
        for point, v in zip(chunk, eval_std_many(f, chunk)):
            checked += 1
            if v != expected(point):
                return Verdict(False, point, checked)
    return Verdict(True, None, checked)
