"""Formulas of Łukasiewicz logic with internal and scalar product.

Formulas are trees over six primitive node kinds::

    Var(i) | Zero() | Neg(a) | Oplus(a, b) | Prod(a, b) | Scal(alpha, a)

``Scal(alpha, a)`` is interpreted as scalar multiplication ``alpha * a``.  Every
other connective (implication, strong conjunction, lattice operations, the
dual scalar connective ``nabla``) is sugar and is expanded by the constructor
functions in this module, so the evaluators only ever see the primitives.

The textual syntax is a small s-expression language, see :func:`parse`.
Schemas used by the proof checker additionally contain metavariables
(``?phi`` for formulas, ``?a`` for scalars).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Formula", "Var", "Zero", "Neg", "Oplus", "Prod", "Scal", "Meta", "ScalarMeta",
    "ParseError", "parse", "to_sexpr", "free_vars", "max_var", "size",
    "one", "imp", "odot", "ominus", "vee", "wedge", "iff", "nabla", "delta",
    "match_schema", "substitute", "is_primitive", "parse_rational", "format_rational",
]


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_sexpr(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be a positive integer, got {self.index!r}")


@dataclass(frozen=True, slots=True)
class Zero(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class Oplus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Prod(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class ScalarMeta:
    """Scalar metavariable, only valid inside schemas."""

    name: str

    def __str__(self) -> str:
        return "?" + self.name


@dataclass(frozen=True, slots=True)
class Scal(Formula):
    alpha: Union[Fraction, ScalarMeta]
    child: Formula

    def __post_init__(self):
        if isinstance(self.alpha, ScalarMeta):
            return
        alpha = Fraction(self.alpha)
        if not 0 <= alpha <= 1:
            raise ValueError(f"scalar must lie in [0,1], got {alpha}")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True, slots=True)
class Meta(Formula):
    """Formula metavariable, only valid inside schemas."""

    name: str


ZERO = Zero()


# -- derived connectives ------------------------------------------------------
# The expansions below are fixed: proof schemas and candidate formulas go
# through the same functions, so axiom matching is purely structural.

def one() -> Formula:
    return Neg(ZERO)


def imp(a: Formula, b: Formula) -> Formula:
    return Oplus(Neg(a), b)


def odot(a: Formula, b: Formula) -> Formula:
    return Neg(Oplus(Neg(a), Neg(b)))


def ominus(a: Formula, b: Formula) -> Formula:
    return odot(a, Neg(b))


def vee(a: Formula, b: Formula) -> Formula:
    return Oplus(ominus(a, b), b)


def wedge(a: Formula, b: Formula) -> Formula:
    return Neg(vee(Neg(a), Neg(b)))


def iff(a: Formula, b: Formula) -> Formula:
    return odot(imp(a, b), imp(b, a))


def delta(alpha, a: Formula) -> Formula:
    return Scal(alpha, a)


def nabla(alpha, a: Formula) -> Formula:
    return Neg(Scal(alpha, Neg(a)))


# -- rationals ----------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse ``INT`` or ``INT/POSINT``; decimals and exponents are rejected."""
    num, sep, den = text.partition("/")
    try:
        if not _is_int(num) or (sep and not (den.isdigit() and int(den) > 0)):
            raise ValueError
        return Fraction(int(num), int(den) if sep else 1)
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def _is_int(s: str) -> bool:
    return s.lstrip("+-").isdigit() and s.count("-") + s.count("+") <= 1 and s[-1:].isdigit()


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- parsing ------------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error; ``pos`` is the character offset of the offending token."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_BINARY = {
    "oplus": Oplus, "prod": Prod, "imp": imp, "odot": odot,
    "ominus": ominus, "vee": vee, "wedge": wedge, "iff": iff,
}
_SCALAR = {"scal": delta, "nabla": nabla}


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    tokens.append(("", n))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_meta: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_meta = allow_meta

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        if tok[0]:
            self.i += 1
        return tok

    def expect(self, what: str):
        tok, pos = self.take()
        if tok != what:
            raise ParseError(f"expected {what!r}, got {tok or 'end of input'!r}", pos)

    def term(self) -> Formula:
        tok, pos = self.take()
        if tok == "zero":
            return ZERO
        if tok == "one":
            return one()
        if tok.startswith("?") and len(tok) > 1:
            if not self.allow_meta:
                raise ParseError(f"metavariable {tok!r} not allowed here", pos)
            return Meta(tok[1:])
        if tok != "(":
            raise ParseError(f"unexpected token {tok or 'end of input'!r}", pos)
        head, hpos = self.take()
        if head == "var":
            arg, apos = self.take()
            if not _is_int(arg):
                raise ParseError(f"expected variable index, got {arg!r}", apos)
            if int(arg) < 1:
                raise ParseError(f"variable index must be positive, got {arg}", apos)
            result = Var(int(arg))
        elif head == "neg":
            result = Neg(self.term())
        elif head in _BINARY:
            left = self.term()
            result = _BINARY[head](left, self.term())
        elif head in _SCALAR:
            alpha = self.scalar()
            result = _SCALAR[head](alpha, self.term())
        else:
            raise ParseError(f"unknown connective {head or 'end of input'!r}", hpos)
        self.expect(")")
        return result

    def scalar(self):
        tok, pos = self.take()
        if tok.startswith("?") and len(tok) > 1:
            if not self.allow_meta:
                raise ParseError(f"metavariable {tok!r} not allowed here", pos)
            return ScalarMeta(tok[1:])
        try:
            alpha = parse_rational(tok)
        except ValueError as exc:
            raise ParseError(str(exc), pos) from None
        if not 0 <= alpha <= 1:
            raise ParseError(f"scalar {tok} outside [0,1]", pos)
        return alpha


def parse(text: str, allow_meta: bool = False) -> Formula:
    """Parse a formula, expanding derived connectives into primitives.

    >>> parse("(imp (var 1) (var 2))")
    Oplus(left=Neg(child=Var(index=1)), right=Var(index=2))
    """
    p = _Parser(text, allow_meta)
    result = p.term()
    tok, pos = p.peek()
    if tok:
        raise ParseError(f"trailing input {tok!r}", pos)
    return result


def to_sexpr(f: Formula) -> str:
    """Render ``f`` over the primitive connectives."""
    parts: list[str] = []
    _emit(f, parts)
    return "".join(parts)


def _emit(f: Formula, out: list) -> None:
    if isinstance(f, Zero):
        out.append("zero")
    elif isinstance(f, Var):
        out.append(f"(var {f.index})")
    elif isinstance(f, Neg):
        out.append("(neg ")
        _emit(f.child, out)
        out.append(")")
    elif isinstance(f, (Oplus, Prod)):
        out.append("(oplus " if isinstance(f, Oplus) else "(prod ")
        _emit(f.left, out)
        out.append(" ")
        _emit(f.right, out)
        out.append(")")
    elif isinstance(f, Scal):
        alpha = str(f.alpha) if isinstance(f.alpha, ScalarMeta) else format_rational(f.alpha)
        out.append(f"(scal {alpha} ")
        _emit(f.child, out)
        out.append(")")
    elif isinstance(f, Meta):
        out.append("?" + f.name)
    else:
        raise TypeError(f"not a formula: {f!r}")


# -- traversal ----------------------------------------------------------------

def _children(f: Formula) -> tuple:
    if isinstance(f, (Neg, Scal)):
        return (f.child,)
    if isinstance(f, (Oplus, Prod)):
        return (f.left, f.right)
    return ()


def _walk(f: Formula):
    """Yield each distinct node once (formulas may share subtrees)."""
    seen = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(_children(node))


def free_vars(f: Formula) -> set[int]:
    return {node.index for node in _walk(f) if isinstance(node, Var)}


def max_var(f: Formula) -> int:
    """Largest variable index in ``f``, 0 for closed formulas."""
    return max(free_vars(f), default=0)


def size(f: Formula) -> int:
    """Number of distinct nodes (shared subtrees counted once)."""
    return sum(1 for _ in _walk(f))


def is_primitive(f: Formula) -> bool:
    """True when ``f`` has no metavariables."""
    return not any(
        isinstance(node, Meta) or (isinstance(node, Scal) and isinstance(node.alpha, ScalarMeta))
        for node in _walk(f)
    )


# -- schemas ------------------------------------------------------------------

Substitution = dict


def match_schema(schema: Formula, candidate: Formula) -> Substitution | None:
    """Syntactic first-order matching of ``schema`` against ``candidate``.

    Returns the substitution (metavariable name -> Formula or Fraction) or
    ``None``.  Repeated metavariables must bind to equal values.  Side
    conditions between scalars are the caller's business.
    """
    subst: Substitution = {}
    stack = [(schema, candidate)]
    while stack:
        s, c = stack.pop()
        if isinstance(s, Meta):
            key = "?" + s.name
            bound = subst.get(key)
            if bound is None:
                subst[key] = c
            elif bound is not c and bound != c:
                return None
            continue
        if type(s) is not type(c):
            return None
        if isinstance(s, Var):
            if s.index != c.index:
                return None
        elif isinstance(s, Scal):
            if isinstance(s.alpha, ScalarMeta):
                key = "?" + s.alpha.name
                if key in subst and subst[key] != c.alpha:
                    return None
                subst[key] = c.alpha
            elif s.alpha != c.alpha:
                return None
        stack.extend(zip(_children(s), _children(c)))
    return subst


def substitute(schema: Formula, subst: Substitution) -> Formula:
    """Replace metavariables in ``schema``; keys are ``?name`` strings."""
    memo: dict = {}

    def go(s):
        key = id(s)
        if key in memo:
            return memo[key]
        if isinstance(s, Meta):
            r = subst["?" + s.name]
        elif isinstance(s, (Var, Zero)):
            r = s
        elif isinstance(s, Neg):
            r = Neg(go(s.child))
        elif isinstance(s, Oplus):
            r = Oplus(go(s.left), go(s.right))
        elif isinstance(s, Prod):
            r = Prod(go(s.left), go(s.right))
        elif isinstance(s, Scal):
            alpha = subst["?" + s.alpha.name] if isinstance(s.alpha, ScalarMeta) else s.alpha
            r = Scal(alpha, go(s.child))
        else:
            raise TypeError(f"not a formula: {s!r}")
        memo[key] = r
        return r

    return go(schema)
