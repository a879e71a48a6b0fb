"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping, Optional, Sequence

from .formula import format_rational, parse_rational

__all__ = [
    "Polynomial", "Summand", "add", "mul", "neg", "scale", "eval_poly", "rho_eval",
    "clamp", "decompose", "recompose", "parse_poly", "poly_from_json", "poly_to_json",
    "grlex_key",
]


def grlex_key(exps: tuple) -> tuple:
    """Ascending graded-lex key; ``x1`` ranks above ``x2`` within a degree."""
    return (sum(exps), exps)


class Polynomial:
    """Immutable polynomial in ``n`` variables ``x1..xn`` over the rationals.

    ``terms`` maps exponent tuples (length ``n``) to nonzero Fractions.
    """

    __slots__ = ("n", "_terms", "_key", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple, object] | Iterable = ()):
        if n < 0:
            raise ValueError("ambient dimension must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for n={n}")
            acc[exps] = acc.get(exps, 0) + Fraction(c)
        self.n = n
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._key = None
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._key = None
        p._hash = None
        return p

    @classmethod
    def const(cls, n: int, c) -> Polynomial:
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> Polynomial:
        """The projection ``x_i`` (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} outside ambient dimension {n}")
        return cls(n, {tuple(int(j == i - 1) for j in range(n)): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in ascending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.n, tuple(self.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def _check(self, other: Polynomial):
        if self.n != other.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.n, other)
        self._check(other)
        res = dict(self._terms)
        for e, c in other._terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Polynomial._raw(self.n, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        res: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                res[e] = res.get(e, 0) + c1 * c2
        return Polynomial._raw(self.n, {e: c for e, c in res.items() if c})

    __rmul__ = __mul__

    def scale(self, r) -> Polynomial:
        r = Fraction(r)
        if not r:
            return Polynomial._raw(self.n, {})
        return Polynomial._raw(self.n, {e: r * c for e, c in self._terms.items()})

    def __call__(self, point: Sequence) -> Fraction:
        return eval_poly(self, point)

    def __repr__(self):
        return f"Polynomial({self.n}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def neg(p: Polynomial) -> Polynomial:
    return -p


def scale(r, p: Polynomial) -> Polynomial:
    return p.scale(r)


def eval_poly(p: Polynomial, point: Sequence) -> Fraction:
    if len(point) != p.n:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {p.n}")
    total = Fraction(0)
    for exps, c in p._terms.items():
        term = c
        for x, e in zip(point, exps):
            if e:
                term *= x ** e
        total += term
    return Fraction(total)


def clamp(v) -> Fraction:
    return Fraction(0) if v < 0 else Fraction(1) if v > 1 else Fraction(v)


def rho_eval(p: Polynomial, point: Sequence) -> Fraction:
    """Truncation ``(p v 0) ^ 1`` of ``p`` at ``point``."""
    return clamp(eval_poly(p, point))


# -- summand decomposition ------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Summand:
    """``coef * monomial`` with ``0 < |coef| <= 1``; ``exps is None`` marks a constant."""

    coef: Fraction
    exps: Optional[tuple]

    def __post_init__(self):
        if self.coef == 0 or abs(self.coef) > 1:
            raise ValueError(f"summand coefficient must satisfy 0 < |r| <= 1, got {self.coef}")

    @property
    def is_constant(self) -> bool:
        return self.exps is None

    def negated(self) -> Summand:
        return Summand(-self.coef, self.exps)


def _split(c: Fraction) -> list[Fraction]:
    sign = 1 if c > 0 else -1
    whole = floor(abs(c))
    rest = abs(c) - whole
    out = [Fraction(sign)] * whole
    if rest:
        out.append(sign * rest)
    return out


def decompose(p: Polynomial) -> list[Summand]:
    """Split ``p`` into unit-bounded summands.

    Constants come first, then monomials in ascending graded-lex order.  A
    coefficient ``c`` becomes ``floor(|c|)`` copies of ``sign(c)`` followed by
    the fractional remainder.
    """
    out = []
    for exps, c in p.items():
        marker = None if not any(exps) else exps
        out.extend(Summand(r, marker) for r in _split(c))
    return out


def recompose(summands: Iterable[Summand], n: int) -> Polynomial:
    acc: dict[tuple, Fraction] = {}
    zero = (0,) * n
    for s in summands:
        e = zero if s.exps is None else s.exps
        acc[e] = acc.get(e, 0) + s.coef
    return Polynomial(n, acc)


# -- text and JSON formats ----------------------------------------------------

def _format_monomial(exps) -> str:
    return " ".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e)


def format_poly(p: Polynomial) -> str:
    """Render as ``c x1^e1 x2^e2 + ...``, highest graded-lex term first."""
    items = p.items()[::-1]
    if not items:
        return "0"
    out = []
    for k, (exps, c) in enumerate(items):
        mono = _format_monomial(exps)
        mag = abs(c)
        body = mono if (mag == 1 and mono) else (f"{format_rational(mag)} {mono}".strip())
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+)(?:\^(?P<exp>\d+))?)|(?P<op>[-+*]))")


def parse_poly(text: str, n: int | None = None) -> Polynomial:
    """Parse ``"2 x1 - 1"``, ``"1/2 x1^2 x2 + 3"`` and similar.

    Factors within a term may be separated by whitespace or ``*``.  Without
    ``n`` the ambient dimension is the largest variable index (at least 1).
    """
    terms: list[tuple[Fraction, dict]] = []
    pos, sign, coef, mono, have = 0, 1, Fraction(1), {}, False
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")

    def flush():
        if not have:
            raise ValueError(f"dangling operator in polynomial {text!r}")
        terms.append((sign * coef, dict(mono)))

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at position {pos} in {text!r}")
        pos = m.end()
        if m.group("op") in ("+", "-"):
            if have:
                flush()
                sign, coef, mono, have = 1, Fraction(1), {}, False
            if m.group("op") == "-":
                sign = -sign
        elif m.group("op") == "*":
            if not have:
                raise ValueError(f"misplaced '*' in {text!r}")
        elif m.group("num"):
            coef *= parse_rational(m.group("num"))
            have = True
        else:
            i = int(m.group("idx"))
            if i < 1:
                raise ValueError("variable indices start at x1")
            mono[i] = mono.get(i, 0) + int(m.group("exp") or 1)
            have = True
    flush()
    top = max((i for _, mono in terms for i in mono), default=0)
    if n is None:
        n = max(top, 1)
    elif top > n:
        raise ValueError(f"variable x{top} exceeds ambient dimension {n}")
    acc = []
    for c, mono in terms:
        acc.append((tuple(mono.get(i + 1, 0) for i in range(n)), c))
    return Polynomial(n, acc)


def poly_to_json(p: Polynomial) -> dict:
    return {
        "n": p.n,
        "terms": [{"coef": format_rational(c), "exps": list(e)} for e, c in p.items()[::-1]],
    }


def poly_from_json(obj, n: int | None = None) -> Polynomial:
    """Accept the JSON object form or a text string."""
    if isinstance(obj, str):
        return parse_poly(obj, n)
    dim = obj["n"]
    if n is not None and n != dim:
        raise ValueError(f"ambient dimension mismatch: {dim} vs {n}")
    return Polynomial(dim, [(t["exps"], parse_rational(str(t["coef"]))) for t in obj["terms"]])
