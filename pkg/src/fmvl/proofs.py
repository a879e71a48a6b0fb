"""Hilbert-style derivations in FMVL and FMVL+.

FMVL has fifteen axiom schemas and modus ponens; FMVL+ adds the Semiprime
rule ``neg(phi * phi) / neg phi``.  Schemas are written in the formula
syntax with metavariables and go through the same desugaring as candidate
formulas, so recognizing an axiom instance is a structural match plus an
exact check of any scalar side condition.
"""

from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Callable, Optional, Union

from .formula import Formula, Neg, Prod, imp, match_schema, max_var, parse, parse_rational, to_sexpr
from .models import GridSpec, Verdict, eval_std_many

__all__ = [
    "AxiomSchema", "AXIOMS", "SYSTEMS", "Hyp", "Axiom", "MP", "SP", "Line", "Derivation",
    "ProofCheck", "is_axiom_instance", "check_derivation", "soundness_spot_check",
    "derivation_from_json", "derivation_to_json", "load_derivation", "bundled_derivations",
]

SYSTEMS = ("FMVL", "FMVL+")


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    text: str
    side: Optional[Callable[[dict], bool]] = None
    side_text: str = "none"

    @cached_property
    def schema(self) -> Formula:
        return parse(self.text, allow_meta=True)

    def match(self, f: Formula) -> dict | None:
        subst = match_schema(self.schema, f)
        if subst is None or (self.side is not None and not self.side(subst)):
            return None
        return subst


AXIOMS: tuple[AxiomSchema, ...] = (
    AxiomSchema("L1", "(imp ?phi (imp ?psi ?phi))"),
    AxiomSchema("L2", "(imp (imp ?phi ?psi) (imp (imp ?psi ?chi) (imp ?phi ?chi)))"),
    AxiomSchema("L3", "(imp (vee ?phi ?psi) (vee ?psi ?phi))"),
    AxiomSchema("L4", "(imp (imp (neg ?psi) (neg ?phi)) (imp ?phi ?psi))"),
    AxiomSchema("R1", "(iff (nabla ?a (imp ?phi ?psi)) (imp (nabla ?a ?phi) (nabla ?a ?psi)))"),
    AxiomSchema("R2", "(iff (nabla ?c ?phi) (imp (nabla ?b ?phi) (nabla ?a ?phi)))",
                lambda s: s["?c"] == max(Fraction(0), s["?a"] - s["?b"]), "c = max(0, a - b)"),
    AxiomSchema("R3", "(iff (nabla ?a (nabla ?b ?phi)) (nabla ?c ?phi))",
                lambda s: s["?c"] == s["?a"] * s["?b"], "c = a * b"),
    AxiomSchema("R4", "(iff (nabla ?a ?phi) ?phi)", lambda s: s["?a"] == 1, "a = 1"),
    AxiomSchema("P1", "(iff (prod ?chi (ominus ?phi ?psi)) (ominus (prod ?chi ?phi) (prod ?chi ?psi)))"),
    AxiomSchema("P2", "(iff (prod ?phi (prod ?psi ?chi)) (prod (prod ?phi ?psi) ?chi))"),
    AxiomSchema("P3", "(imp ?phi (prod ?phi (imp ?phi ?phi)))"),
    AxiomSchema("P4", "(imp (prod ?phi ?psi) ?phi)"),
    AxiomSchema("P5", "(iff (prod ?phi ?psi) (prod ?psi ?phi))"),
    AxiomSchema("A1", "(iff (scal ?a (prod ?phi ?psi)) (prod (scal ?a ?phi) ?psi))"),
    AxiomSchema("A2", "(iff (scal ?a (prod ?phi ?psi)) (prod ?phi (scal ?a ?psi)))"),
)
_BY_NAME = {ax.name: ax for ax in AXIOMS}


def is_axiom_instance(f: Formula, system: str = "FMVL") -> tuple[str, dict] | None:
    """First schema (in the order L1..L4, R1..R4, P1..P5, A1, A2) matching ``f``."""
    _system(system)
    for ax in AXIOMS:
        subst = ax.match(f)
        if subst is not None:
            return ax.name, subst
    return None


def _system(system: str) -> str:
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}; expected one of {SYSTEMS}")
    return system


# -- derivations --------------------------------------------------------------

@dataclass(frozen=True)
class Hyp:
    pass


@dataclass(frozen=True)
class Axiom:
    name: Optional[str] = None
    subst: Optional[dict] = None


@dataclass(frozen=True)
class MP:
    """Modus ponens from line ``minor`` (phi) and line ``major`` (phi -> psi)."""

    minor: int
    major: int


@dataclass(frozen=True)
class SP:
    source: int


Justification = Union[Hyp, Axiom, MP, SP]


@dataclass(frozen=True)
class Line:
    id: int
    formula: Formula
    just: Justification


@dataclass
class Derivation:
    system: str
    theta: list[Formula] = field(default_factory=list)
    lines: list[Line] = field(default_factory=list)


@dataclass
class ProofCheck:
    ok: bool
    line: int | None = None
    reason: str | None = None
    axioms: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        if self.ok:
            return {"result": "ok", "axioms": {str(k): v for k, v in self.axioms.items()}}
        return {"result": "rejected", "error": {"line": self.line, "reason": self.reason}}


def check_derivation(d: Derivation) -> ProofCheck:
    """Check every line; the first failing line is reported."""
    try:
        _system(d.system)
    except ValueError as exc:
        return ProofCheck(False, None, str(exc))
    seen: dict[int, Formula] = {}
    used: dict[int, str] = {}
    last = None
    for line in d.lines:
        if last is not None and line.id <= last:
            return ProofCheck(False, line.id, "line ids must be strictly increasing")
        last = line.id
        reason = _check_line(d, line, seen, used)
        if reason:
            return ProofCheck(False, line.id, reason)
        seen[line.id] = line.formula
    return ProofCheck(True, axioms=used)


def _cited(seen: dict, current: int, cited: int) -> tuple[Formula | None, str | None]:
    if cited >= current:
        return None, f"forward reference to line {cited}"
    if cited not in seen:
        return None, f"reference to unknown line {cited}"
    return seen[cited], None


def _check_line(d: Derivation, line: Line, seen: dict, used: dict) -> str | None:
    just = line.just
    if isinstance(just, Hyp):
        if not any(line.formula == h for h in d.theta):
            return "not a hypothesis"
        return None
    if isinstance(just, Axiom):
        if just.name is not None:
            ax = _BY_NAME.get(just.name)
            if ax is None:
                return f"unknown axiom {just.name!r}"
            subst = ax.match(line.formula)
            if subst is None:
                return f"not an instance of axiom {just.name}"
            name = ax.name
        else:
            found = is_axiom_instance(line.formula, d.system)
            if found is None:
                return "not an axiom instance"
            name, subst = found
        if just.subst is not None:
            for key, value in just.subst.items():
                key = key if key.startswith("?") else "?" + key
                if subst.get(key) != value:
                    return f"substitution for {key} does not match axiom {name}"
        used[line.id] = name
        return None
    if isinstance(just, MP):
        minor, err = _cited(seen, line.id, just.minor)
        if err:
            return err
        major, err = _cited(seen, line.id, just.major)
        if err:
            return err
        if major != imp(minor, line.formula):
            return f"bad MP shape: line {just.major} is not (imp line {just.minor} this-line)"
        return None
    if isinstance(just, SP):
        if d.system != "FMVL+":
            return "SP not available in FMVL"
        premise, err = _cited(seen, line.id, just.source)
        if err:
            return err
        if not (isinstance(premise, Neg) and isinstance(premise.child, Prod)
                and premise.child.left == premise.child.right
                and line.formula == Neg(premise.child.left)):
            return f"bad SP shape: expected (neg (prod psi psi)) at line {just.source} and (neg psi) here"
        return None
    return f"unknown justification {just!r}"


def soundness_spot_check(d: Derivation, grid: GridSpec | None = None, require_valid: bool = True) -> Verdict:
    """At grid points where every hypothesis is 1, every line must evaluate to 1.

    With ``require_valid=False`` the derivation is not checked first, which is
    how a deliberately broken derivation is exercised.
    """
    if require_valid:
        res = check_derivation(d)
        if not res:
            raise ValueError(f"derivation rejected at line {res.line}: {res.reason}")
    formulas = list(d.theta) + [ln.formula for ln in d.lines]
    n = max((max_var(f) for f in formulas), default=0)
    grid = grid or GridSpec(4, n)
    if grid.n < n:
        raise ValueError(f"grid dimension {grid.n} does not cover variable {n}")
    points = list(grid.points())
    models = [all(vals) for vals in zip(*([v == 1 for v in eval_std_many(h, points)] for h in d.theta))] \
        if d.theta else [True] * len(points)
    for ln in d.lines:
        for point, is_model, v in zip(points, models, eval_std_many(ln.formula, points)):
            if is_model and v != 1:
                return Verdict(False, point, len(points), line=ln.id)
    return Verdict(True, None, len(points))


# -- JSON ---------------------------------------------------------------------

def _just_from_json(obj: dict) -> Justification:
    kind = obj.get("type")
    if kind == "hyp":
        return Hyp()
    if kind == "axiom":
        subst = obj.get("subst")
        if subst is not None:
            subst = {k: (parse_rational(v) if k.lstrip("?") in ("a", "b", "c") else parse(v))
                     for k, v in subst.items()}
        return Axiom(obj.get("name"), subst)
    if kind == "mp":
        if "from" in obj:
            minor, major = obj["from"]
        else:
            minor, major = obj["minor"], obj["major"]
        return MP(int(minor), int(major))
    if kind == "sp":
        return SP(int(obj["from"]))
    raise ValueError(f"unknown justification type {kind!r}")


def derivation_from_json(obj: dict) -> Derivation:
    return Derivation(
        system=obj.get("system", "FMVL"),
        theta=[parse(t) for t in obj.get("theta", [])],
        lines=[Line(int(ln["id"]), parse(ln["formula"]), _just_from_json(ln["just"])) for ln in obj["lines"]],
    )


def load_derivation(path) -> Derivation:
    with open(path) as fh:
        return derivation_from_json(json.load(fh))


def bundled_derivations() -> dict[str, Derivation]:
    """Example derivations shipped with the package, keyed by file stem."""
    out = {}
    for entry in sorted(resources.files("fmvl").joinpath("data").iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            out[entry.name[:-5]] = derivation_from_json(json.loads(entry.read_text()))
    return out


def _just_to_json(j: Justification) -> dict:
    if isinstance(j, Hyp):
        return {"type": "hyp"}
    if isinstance(j, Axiom):
        out = {"type": "axiom"}
        if j.name:
            out["name"] = j.name
        return out
    if isinstance(j, MP):
        return {"type": "mp", "from": [j.minor, j.major]}
    return {"type": "sp", "from": j.source}


def derivation_to_json(d: Derivation) -> dict:
    return {
        "system": d.system,
        "theta": [to_sexpr(t) for t in d.theta],
        "lines": [{"id": ln.id, "formula": to_sexpr(ln.formula), "just": _just_to_json(ln.just)} for ln in d.lines],
    }
