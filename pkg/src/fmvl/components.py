"""Polynomial components of term functions.

Every term function on ``[0,1]^n`` agrees, point by point, with one of finitely
many polynomials.  :func:`components` produces such a candidate set by
structural recursion::

    x_i -> {x_i}        0 -> {0}            neg t -> {1 - q}
    scal a t -> {a q}   s * t -> {q p}      s (+) t -> {1} | {q + p}

Duplicates are merged.  The set can be astronomically large for formulas with
many nested sums, so a set built from a formula keeps the formula and only
materializes its polynomials on demand.  Pointwise questions ("which values
do the components take at x?") run the same recursion on values instead of
polynomials; evaluation at a point commutes with ``+``, ``*`` and scaling, so
the answer is identical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .formula import Formula, Meta, Neg, Oplus, Prod, Scal, Var, Zero, is_primitive, max_var
from .models import GridSpec, Verdict, _chunks, _run, eval_std_many
from .polynomial import Polynomial, eval_poly, grlex_key

__all__ = ["ComponentSet", "components", "verify_components", "component_bound"]

ONE_Q = Fraction(1)
ZERO_Q = Fraction(0)


def _order(p: Polynomial):
    return (len(p.items()), [(grlex_key(e), c) for e, c in p.items()])


class ComponentSet:
    """A finite set of polynomials in ``n`` variables.

    Built either from explicit polynomials (:meth:`of`) or lazily from a
    formula (:func:`components`).
    """

    __slots__ = ("n", "_polys", "source")

    def __init__(self, n: int, polys: Iterable[Polynomial] | None = None, source: Formula | None = None):
        if polys is None and source is None:
            raise ValueError("need polynomials or a source formula")
        self.n = n
        self.source = source
        self._polys = None
        if polys is not None:
            polys = tuple(sorted(set(polys), key=_order))
            if not polys:
                raise ValueError("a component set is never empty")
            if any(p.n != n for p in polys):
                raise ValueError("all components must share the ambient dimension")
            self._polys = polys

    @classmethod
    def of(cls, n: int, polys: Iterable[Polynomial]) -> ComponentSet:
        return cls(n, polys)

    @property
    def polys(self) -> tuple[Polynomial, ...]:
        if self._polys is None:
            self._polys = tuple(sorted(_materialize(self.source, self.n), key=_order))
        return self._polys

    @property
    def materialized(self) -> bool:
        return self._polys is not None

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __contains__(self, p):
        return p in self.polys

    def values_at(self, point) -> set[Fraction]:
        """``{q(point) for q in self}``."""
        if self._polys is not None:
            return {eval_poly(q, point) for q in self._polys}
        return _values(self.source, point)

    def __repr__(self):
        if self._polys is None:
            return f"ComponentSet(n={self.n}, lazy)"
        return f"ComponentSet(n={self.n}, {[str(p) for p in self._polys]})"


def components(f: Formula, n: int) -> ComponentSet:
    """Candidate components of the term function of ``f`` on ``[0,1]^n``."""
    top = max_var(f)
    if top > n:
        raise ValueError(f"variable {top} exceeds dimension {n}")
    _reject_schema(f)
    return ComponentSet(n, source=f)


def _reject_schema(f):
    if not is_primitive(f):
        raise ValueError("schemas with metavariables have no components")


def _materialize(f: Formula, n: int) -> frozenset:
    one = Polynomial.const(n, 1)
    memo: dict[int, frozenset] = {}

    def go(node) -> frozenset:
        key = id(node)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Var):
            out = frozenset([Polynomial.var(n, node.index)])
        elif isinstance(node, Zero):
            out = frozenset([Polynomial(n)])
        elif isinstance(node, Neg):
            out = frozenset(one - q for q in go(node.child))
        elif isinstance(node, Scal):
            out = frozenset(q.scale(node.alpha) for q in go(node.child))
        elif isinstance(node, Prod):
            right = go(node.right)
            out = frozenset(q * p for q in go(node.left) for p in right)
        elif isinstance(node, Oplus):
            right = go(node.right)
            out = frozenset([one, *(q + p for q in go(node.left) for p in right)])
        elif isinstance(node, Meta):
            raise ValueError(f"metavariable ?{node.name} has no components")
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[key] = out
        return out

    return _run(go, f)


def _values(f: Formula, point) -> set[Fraction]:
    memo: dict[int, frozenset] = {}

    def go(node) -> frozenset:
        key = id(node)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Var):
            out = frozenset([Fraction(point[node.index - 1])])
        elif isinstance(node, Zero):
            out = frozenset([ZERO_Q])
        elif isinstance(node, Neg):
            out = frozenset(1 - v for v in go(node.child))
        elif isinstance(node, Scal):
            out = frozenset(node.alpha * v for v in go(node.child))
        elif isinstance(node, Prod):
            right = go(node.right)
            out = frozenset(a * b for a in go(node.left) for b in right)
        elif isinstance(node, Oplus):
            right = go(node.right)
            out = frozenset([ONE_Q, *(a + b for a in go(node.left) for b in right)])
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[key] = out
        return out

    return set(_run(go, f))


def component_bound(f: Formula) -> int:
    """Size bound before deduplication: product of child sizes, plus one per ``oplus``."""
    memo: dict[int, int] = {}

    def go(node) -> int:
        key = id(node)
        if key not in memo:
            if isinstance(node, (Neg, Scal)):
                memo[key] = go(node.child)
            elif isinstance(node, Prod):
                memo[key] = go(node.left) * go(node.right)
            elif isinstance(node, Oplus):
                memo[key] = go(node.left) * go(node.right) + 1
            else:
                memo[key] = 1
        return memo[key]

    return _run(go, f)


def verify_components(f: Formula, cs: ComponentSet, grid: GridSpec) -> Verdict:
    """Pass iff at each grid point the value of ``f`` equals some component's value.

    For a lazy set the search is guided: the saturation pattern of the
    source formula's ``oplus`` nodes at the point selects one member of the
    set, which is built symbolically and evaluated as a polynomial.  Only if
    that member misses is the full value set at the point enumerated.
    """
    if grid.n != cs.n:
        raise ValueError(f"grid dimension {grid.n} differs from component dimension {cs.n}")
    if max_var(f) > grid.n:
        raise ValueError(f"grid dimension {grid.n} does not cover variable {max_var(f)}")
    guide = None if cs.materialized else _Guide(cs.source, cs.n)
    checked = 0
    for chunk in _chunks(grid.points()):
        values = eval_std_many(f, chunk)
        hints = guide.witnesses(chunk) if guide else [None] * len(chunk)
        for point, v, q in zip(chunk, values, hints):
            checked += 1
            if q is not None and eval_poly(q, point) == v:
                continue
            if v not in cs.values_at(point):
                return Verdict(False, point, checked)
    return Verdict(True, None, checked)


class _Guide:
    """Selects, per point, the member of ``components(source)`` that follows
    the source's own evaluation (``1`` where an ``oplus`` saturates)."""

    def __init__(self, source: Formula, n: int):
        self.source = source
        self.n = n
        self.one = Polynomial.const(n, 1)
        self.interned: dict[Polynomial, Polynomial] = {}
        self.cache: dict[tuple, Polynomial] = {}

    def intern(self, p: Polynomial) -> Polynomial:
        return self.interned.setdefault(p, p)

    def witnesses(self, points) -> list[Polynomial]:
        flags = _saturation(self.source, points)
        order = list(flags)
        by_pattern: dict[tuple, Polynomial] = {}
        out = []
        for k in range(len(points)):
            pattern = tuple(flags[key][k] for key in order)
            q = by_pattern.get(pattern)
            if q is None:
                sat = {key: flags[key][k] for key in order}
                q = by_pattern[pattern] = self.build(sat)
            out.append(q)
        return out

    def build(self, sat: dict) -> Polynomial:
        n, memo, cache = self.n, {}, self.cache

        def go(node):
            key = id(node)
            got = memo.get(key)
            if got is not None:
                return got
            if isinstance(node, Var):
                out = self.intern(Polynomial.var(n, node.index))
            elif isinstance(node, Zero):
                out = self.intern(Polynomial(n))
            elif isinstance(node, Oplus) and sat[key]:
                out = self.intern(self.one)
            else:
                kids = [go(c) for c in ((node.child,) if isinstance(node, (Neg, Scal)) else (node.left, node.right))]
                ck = (key, *map(id, kids))
                out = cache.get(ck)
                if out is None:
                    if isinstance(node, Neg):
                        out = self.one - kids[0]
                    elif isinstance(node, Scal):
                        out = kids[0].scale(node.alpha)
                    elif isinstance(node, Prod):
                        out = kids[0] * kids[1]
                    else:
                        out = kids[0] + kids[1]
                    out = cache[ck] = self.intern(out)
            memo[key] = out
            return out

        return _run(go, self.source)


def _saturation(f: Formula, points) -> dict[int, list[bool]]:
    """Per ``oplus`` node, whether the truncated sum saturates at each point."""
    memo: dict[int, list] = {}
    flags: dict[int, list[bool]] = {}
    pts = [tuple(Fraction(x) for x in p) for p in points]

    def go(node):
        key = id(node)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Var):
            vals = [p[node.index - 1] for p in pts]
        elif isinstance(node, Zero):
            vals = [ZERO_Q] * len(pts)
        elif isinstance(node, Neg):
            vals = [1 - a for a in go(node.child)]
        elif isinstance(node, Scal):
            vals = [node.alpha * a for a in go(node.child)]
        elif isinstance(node, Prod):
            vals = [a * b for a, b in zip(go(node.left), go(node.right))]
        elif isinstance(node, Oplus):
            sums = [a + b for a, b in zip(go(node.left), go(node.right))]
            flags[key] = [s >= 1 for s in sums]
            vals = [ONE_Q if s >= 1 else s for s in sums]
        else:
            raise TypeError(f"not a formula: {node!r}")
        memo[key] = vals
        return vals

    _run(go, f)
    return flags
