"""Evaluation in the standard algebra on [0,1] and in the pair model.

The standard algebra interprets ``oplus`` as truncated addition, ``neg`` as
``1 - x`` and both products as real multiplication.  The pair model lives on
``[0,1] x [0,1]`` with every operation coordinatewise except the internal
product, ``(x1, y1) * (x2, y2) = (x1 * x2, 0)``; it has nonzero nilpotents.

Identity checks run over a rational grid ``{0, 1/d, ..., 1}^n`` in
lexicographic order, so the first counterexample is deterministic.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .formula import Formula, Meta, Neg, Oplus, Prod, Scal, Var, Zero, format_rational, max_var

__all__ = [
    "GridSpec", "Verdict", "eval_std", "eval_pair", "eval_std_many", "eval_pair_many",
    "check_identity", "check_quasi_identity", "format_point", "MODELS",
]

ZERO_Q = Fraction(0)
ONE_Q = Fraction(1)


@dataclass(frozen=True)
class GridSpec:
    d: int
    n: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"grid denominator must be >= 1, got {self.d}")
        if self.n < 0:
            raise ValueError(f"grid dimension must be >= 0, got {self.n}")

    def values(self) -> list[Fraction]:
        return [Fraction(k, self.d) for k in range(self.d + 1)]

    def points(self) -> Iterable[tuple]:
        """All points of the grid in lexicographic order."""
        return itertools.product(self.values(), repeat=self.n)

    def pair_points(self) -> Iterable[tuple]:
        """Grid over pair values; lexicographic in ``(x1, y1, x2, y2, ...)``."""
        for flat in itertools.product(self.values(), repeat=2 * self.n):
            yield tuple(zip(flat[::2], flat[1::2]))

    def __len__(self):
        return (self.d + 1) ** self.n


@dataclass
class Verdict:
    """Outcome of an exhaustive check: ``ok`` or the first failing point."""

    ok: bool
    point: tuple | None = None
    checked: int = 0
    line: int | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        out = {"result": "pass" if self.ok else "fail"}
        if self.point is not None:
            out["point"] = format_point(self.point)
        if self.line is not None:
            out["line"] = self.line
        out.update(self.detail)
        return out


def format_point(point) -> list:
    return [format_point(x) if isinstance(x, tuple) else format_rational(x) for x in point]


# -- standard algebra ---------------------------------------------------------

def _lookup(point, i):
    if i > len(point):
        raise ValueError(f"no value assigned to variable {i}")
    return point[i - 1]


def eval_std(f: Formula, point: Sequence) -> Fraction:
    """Exact value of ``f`` at ``point`` (``point[i-1]`` is the value of ``Var(i)``)."""
    return eval_std_many(f, [tuple(Fraction(x) for x in point)])[0]


def eval_std_many(f: Formula, points: Sequence[Sequence]) -> list[Fraction]:
    """Evaluate ``f`` at every point at once; shared subformulas are computed once."""
    points = [tuple(x if type(x) is Fraction else Fraction(x) for x in p) for p in points]
    memo: dict[int, list] = {}

    def go(node):
        key = id(node)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Var):
            i = node.index
            vals = [_lookup(p, i) for p in points]
        elif isinstance(node, Zero):
            vals = [ZERO_Q] * len(points)
        elif isinstance(node, Neg):
            vals = [1 - a for a in go(node.child)]
        elif isinstance(node, Oplus):
            vals = [s if s < 1 else ONE_Q for s in map(Fraction.__add__, go(node.left), go(node.right))]
        elif isinstance(node, Prod):
            vals = list(map(Fraction.__mul__, go(node.left), go(node.right)))
        elif isinstance(node, Scal):
            alpha = node.alpha
            if not isinstance(alpha, Fraction):
                raise ValueError("cannot evaluate a schema with scalar metavariables")
            vals = [alpha * a for a in go(node.child)]
        elif isinstance(node, Meta):
            raise ValueError(f"cannot evaluate metavariable ?{node.name}")
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[key] = vals
        return vals

    return _run(go, f)


def _run(go, f):
    limit = sys.getrecursionlimit()
    if limit < 20000:
        sys.setrecursionlimit(20000)
    try:
        return go(f)
    finally:
        sys.setrecursionlimit(limit)


# -- pair model ---------------------------------------------------------------

def _pair(v) -> tuple[Fraction, Fraction]:
    x, y = (Fraction(v[0]), Fraction(v[1]))
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise ValueError(f"pair value {v} outside [0,1]^2")
    return (x, y)


def _m(s):
    return s if s < 1 else ONE_Q


def eval_pair(f: Formula, point: Sequence) -> tuple[Fraction, Fraction]:
    return eval_pair_many(f, [tuple(_pair(v) for v in point)])[0]


def eval_pair_many(f: Formula, points: Sequence[Sequence]) -> list[tuple]:
    points = list(points)
    memo: dict[int, list] = {}

    def go(node):
        key = id(node)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Var):
            vals = [_lookup(p, node.index) for p in points]
        elif isinstance(node, Zero):
            vals = [(ZERO_Q, ZERO_Q)] * len(points)
        elif isinstance(node, Neg):
            vals = [(1 - x, 1 - y) for x, y in go(node.child)]
        elif isinstance(node, Oplus):
            vals = [(_m(a[0] + b[0]), _m(a[1] + b[1])) for a, b in zip(go(node.left), go(node.right))]
        elif isinstance(node, Prod):
            vals = [(a[0] * b[0], ZERO_Q) for a, b in zip(go(node.left), go(node.right))]
        elif isinstance(node, Scal):
            alpha = node.alpha
            if not isinstance(alpha, Fraction):
                raise ValueError("cannot evaluate a schema with scalar metavariables")
            vals = [(alpha * x, alpha * y) for x, y in go(node.child)]
        elif isinstance(node, Meta):
            raise ValueError(f"cannot evaluate metavariable ?{node.name}")
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[key] = vals
        return vals

    return _run(go, f)


MODELS = ("std", "pair")


def _model(model: str):
    if model == "std":
        return eval_std_many, GridSpec.points
    if model == "pair":
        return eval_pair_many, GridSpec.pair_points
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def _check_dims(grid: GridSpec, *formulas: Formula):
    need = max((max_var(f) for f in formulas), default=0)
    if need > grid.n:
        raise ValueError(f"grid dimension {grid.n} does not cover variable {need}")


# Grid points are processed in chunks to bound memory on large grids.
_CHUNK = 4096


def _chunks(it, size=_CHUNK):
    it = iter(it)
    while chunk := list(itertools.islice(it, size)):
        yield chunk


def check_identity(lhs: Formula, rhs: Formula, model: str = "std", grid: GridSpec | None = None) -> Verdict:
    """Check ``lhs = rhs`` at every grid point; report the first failure."""
    grid = grid or GridSpec(8, max(max_var(lhs), max_var(rhs)))
    _check_dims(grid, lhs, rhs)
    evaluate, pts = _model(model)
    checked = 0
    for chunk in _chunks(pts(grid)):
        for p, a, b in zip(chunk, evaluate(lhs, chunk), evaluate(rhs, chunk)):
            checked += 1
            if a != b:
                return Verdict(False, p, checked)
    return Verdict(True, None, checked)


def check_quasi_identity(premise: tuple[Formula, Formula], conclusion: tuple[Formula, Formula],
                         model: str = "std", grid: GridSpec | None = None) -> Verdict:
    """Check ``premise => conclusion`` pointwise; a witness satisfies the premise only."""
    (pl, pr), (cl, cr) = premise, conclusion
    grid = grid or GridSpec(8, max(max_var(f) for f in (pl, pr, cl, cr)))
    _check_dims(grid, pl, pr, cl, cr)
    evaluate, pts = _model(model)
    checked = 0
    for chunk in _chunks(pts(grid)):
        rows = zip(chunk, evaluate(pl, chunk), evaluate(pr, chunk), evaluate(cl, chunk), evaluate(cr, chunk))
        for p, a, b, c, d in rows:
            checked += 1
            if a == b and c != d:
                return Verdict(False, p, checked)
    return Verdict(True, None, checked)
