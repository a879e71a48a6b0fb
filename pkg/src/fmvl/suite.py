"""Seeded end-to-end property suite (``fmvl pb-suite``).

For each configured dimension it draws random ISD matrices, compiles
them, checks the compiled formula against the inf-sup of truncations, then
extracts components and checks those too.  It also runs the module-level
property checks (axiom soundness, algebra laws, semiprime separation,
component soundness, compiler correctness).

Each check draws from its own RNG seeded by ``(seed, check name)``, so results
do not depend on which checks run or in what order.  Checks run in a process
pool when ``workers > 1``; the report is sorted by check name either way.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .compiler import compile_isd, compile_truncated, verify_compile
from .components import ComponentSet, components, verify_components
from .formula import Oplus, Var, one, to_sexpr
from .identities import formally_real_identity, semiprime_quasi_identity, standard_laws
from .models import GridSpec, check_identity, check_quasi_identity, format_point
from .polynomial import Polynomial, format_poly
from .proofs import AXIOMS, is_axiom_instance
from .randgen import DEFAULT_WEIGHTS, FormulaParams, PolyParams, random_axiom_instance, random_formula, random_isd, random_poly

__all__ = ["SuiteConfig", "CheckResult", "SuiteReport", "run_suite", "check_names"]


@dataclass
class SuiteConfig:
    seed: int = 42
    grid: int = 8
    dims: list = field(default_factory=lambda: [1, 2])
    instances: int = 30
    formula_instances: int = 50
    axiom_instances: int = 10
    formula_depth: int = 6
    axiom_depth: int = 5
    max_vars: int = 3
    max_den: int = 8
    poly_max_degree: int = 4
    poly_max_coef: int = 3
    poly_max_terms: int = 3
    isd_max_rows: int = 3
    isd_max_cols: int = 3
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    exploratory: bool = False
    inject_fault: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.grid < 1:
            raise ValueError("grid denominator must be >= 1")
        if not self.dims or any(d not in (1, 2) for d in self.dims):
            raise ValueError("dims must be a non-empty subset of {1, 2}; use exploratory for n = 3")
        for name in ("instances", "formula_instances", "axiom_instances", "formula_depth", "axiom_depth",
                     "max_vars", "max_den", "poly_max_terms", "isd_max_rows", "isd_max_cols", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        unknown = set(self.weights) - set(DEFAULT_WEIGHTS)
        if unknown:
            raise ValueError(f"unknown connective weights: {sorted(unknown)}")

    @classmethod
    def from_dict(cls, obj: dict) -> SuiteConfig:
        known = {f.name for f in fields(cls)}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**obj)

    def poly_params(self, n: int) -> PolyParams:
        return PolyParams(n=n, max_degree=self.poly_max_degree, max_coef=self.poly_max_coef,
                          max_den=self.max_den, max_terms=self.poly_max_terms)


@dataclass
class CheckResult:
    name: str
    status: str
    grid: dict
    count: int
    counterexample: dict | None = None
    exploratory: bool = False
    seconds: float = 0.0


@dataclass
class SuiteReport:
    seed: int
    config: dict
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks if not c.exploratory)

    def to_dict(self, timing: bool = True) -> dict:
        checks = []
        for c in self.checks:
            d = asdict(c)
            if not timing:
                d.pop("seconds")
            checks.append(d)
        return {"ok": self.ok, "seed": self.seed, "config": self.config, "checks": checks}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)


# -- individual checks ----------------------------------------------------------
# Each returns (count, counterexample-or-None, grid dict).

def _grid_dict(d, n):
    return {"d": d, "n": n}


def _isd_pipeline(cfg: SuiteConfig, rng: random.Random, n: int):
    grid = GridSpec(cfg.grid, n)
    for i in range(cfg.instances):
        spec = random_isd(rng, cfg.poly_params(n), cfg.isd_max_rows, cfg.isd_max_cols)
        f = compile_isd(spec)
        v = verify_compile(spec, f, grid)
        if not v:
            return cfg.instances, {"instance": i, "stage": "compile", "spec": spec.to_json(),
                                   "point": format_point(v.point)}, _grid_dict(cfg.grid, n)
        v = verify_components(f, components(f, n), grid)
        if not v:
            return cfg.instances, {"instance": i, "stage": "components", "spec": spec.to_json(),
                                   "point": format_point(v.point)}, _grid_dict(cfg.grid, n)
    return cfg.instances, None, _grid_dict(cfg.grid, n)


def _compile_random(cfg: SuiteConfig, rng: random.Random):
    for i in range(cfg.instances):
        n = rng.randint(1, cfg.max_vars)
        p = random_poly(rng, cfg.poly_params(n))
        v = verify_compile(p, compile_truncated(p), GridSpec(cfg.grid, n))
        if not v:
            return cfg.instances, {"instance": i, "poly": format_poly(p), "point": format_point(v.point)}, \
                _grid_dict(cfg.grid, n)
    return cfg.instances, None, _grid_dict(cfg.grid, cfg.max_vars)


def _components_random(cfg: SuiteConfig, rng: random.Random):
    for i in range(cfg.formula_instances):
        n = rng.randint(1, cfg.max_vars)
        f = random_formula(rng, FormulaParams(cfg.formula_depth, n, cfg.max_den, cfg.weights))
        v = verify_components(f, components(f, n), GridSpec(cfg.grid, n))
        if not v:
            return cfg.formula_instances, {"instance": i, "formula": to_sexpr(f), "point": format_point(v.point)}, \
                _grid_dict(cfg.grid, n)
    return cfg.formula_instances, None, _grid_dict(cfg.grid, cfg.max_vars)


def _axiom_soundness(cfg: SuiteConfig, rng: random.Random):
    d = min(cfg.grid, 6)
    params = FormulaParams(cfg.axiom_depth, cfg.max_vars, cfg.max_den, cfg.weights)
    grid = GridSpec(d, cfg.max_vars)
    count = 0
    for ax in AXIOMS:
        for i in range(cfg.axiom_instances):
            f = random_axiom_instance(rng, ax, params)
            count += 1
            if is_axiom_instance(f) is None:
                return count, {"axiom": ax.name, "instance": i, "reason": "not recognized"}, _grid_dict(d, cfg.max_vars)
            v = check_identity(f, one(), "std", grid)
            if not v:
                return count, {"axiom": ax.name, "instance": i, "formula": to_sexpr(f),
                               "point": format_point(v.point)}, _grid_dict(d, cfg.max_vars)
    return count, None, _grid_dict(d, cfg.max_vars)


def _algebra_laws(cfg: SuiteConfig, rng: random.Random):
    laws = standard_laws()
    for law in laws:
        v = check_identity(law.lhs, law.rhs, "std", GridSpec(cfg.grid, law.n))
        if not v:
            return len(laws), {"law": law.name, "point": format_point(v.point)}, _grid_dict(cfg.grid, 3)
    return len(laws), None, _grid_dict(cfg.grid, 3)


def _formally_real(cfg: SuiteConfig, rng: random.Random):
    law = formally_real_identity()
    d = min(cfg.grid, 4)
    v = check_identity(law.lhs, law.rhs, "std", GridSpec(d, law.n))
    return v.checked, None if v else {"point": format_point(v.point)}, _grid_dict(d, law.n)


def _semiprime_std(cfg: SuiteConfig, rng: random.Random):
    premise, conclusion = semiprime_quasi_identity()
    v = check_quasi_identity(premise, conclusion, "std", GridSpec(cfg.grid, 1))
    return v.checked, None if v else {"point": format_point(v.point)}, _grid_dict(cfg.grid, 1)


def _semiprime_pair(cfg: SuiteConfig, rng: random.Random):
    # The pair model has nilpotents, so a witness is the expected outcome.
    premise, conclusion = semiprime_quasi_identity()
    v = check_quasi_identity(premise, conclusion, "pair", GridSpec(2, 1))
    if v:
        return v.checked, {"reason": "no nilpotent witness found"}, _grid_dict(2, 1)
    return v.checked, None, _grid_dict(2, 1)


def _negative_control(cfg: SuiteConfig, rng: random.Random):
    f = Oplus(Var(1), Var(2))
    faulty = ComponentSet.of(2, [Polynomial.const(2, 1), 1 - Polynomial.var(2, 1) + Polynomial.var(2, 2)])
    v = verify_components(f, faulty, GridSpec(cfg.grid, 2))
    if v:
        return v.checked, None, _grid_dict(cfg.grid, 2)
    return v.checked, {"formula": to_sexpr(f), "components": [format_poly(p) for p in faulty],
                       "point": format_point(v.point)}, _grid_dict(cfg.grid, 2)


def _exploratory_isd(cfg: SuiteConfig, rng: random.Random):
    return _isd_pipeline(cfg, rng, 3)


def _registry(cfg: SuiteConfig) -> dict:
    checks = {
        "algebra_laws": _algebra_laws,
        "axiom_soundness": _axiom_soundness,
        "compile_random": _compile_random,
        "components_random": _components_random,
        "formally_real_identity": _formally_real,
        "semiprime_pair_witness": _semiprime_pair,
        "semiprime_std": _semiprime_std,
    }
    for n in cfg.dims:
        checks[f"isd_pipeline[n={n}]"] = lambda c, r, n=n: _isd_pipeline(c, r, n)
    if cfg.inject_fault:
        checks["negative_control"] = _negative_control
    if cfg.exploratory:
        checks["exploratory/isd_pipeline[n=3]"] = _exploratory_isd
    return checks


def check_names(cfg: SuiteConfig) -> list[str]:
    return sorted(_registry(cfg))


def _run_one(args) -> CheckResult:
    cfg, name = args
    rng = random.Random(f"{cfg.seed}:{name}")
    start = time.perf_counter()
    count, cex, grid = _registry(cfg)[name](cfg, rng)
    return CheckResult(
        name=name, status="pass" if cex is None else "fail", grid=grid, count=count,
        counterexample=cex, exploratory=name.startswith("exploratory/"),
        seconds=round(time.perf_counter() - start, 3),
    )


def run_suite(cfg: SuiteConfig | None = None) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    names = check_names(cfg)
    jobs = [(cfg, name) for name in names]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(job) for job in jobs]
    config = asdict(cfg)
    config.pop("workers")
    return SuiteReport(cfg.seed, config, sorted(results, key=lambda r: r.name))
