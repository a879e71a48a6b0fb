"""Command-line interface: ``fmvl <subcommand> ...``.

Formula and polynomial arguments may be given inline or as ``@path`` to read
them from a file.  Every subcommand takes ``--json`` for machine-readable
output, ``--grid D`` for the grid denominator and ``--seed N``.  Checking
commands exit with status 0 on success and 1 on failure; usage errors exit
with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .compiler import ISDSpec, compile_isd, compile_truncated, verify_compile
from .components import component_bound, components, verify_components
from .formula import ParseError, max_var, parse, parse_rational, size, to_sexpr
from .models import GridSpec, MODELS, check_identity, check_quasi_identity, eval_pair, eval_std, format_point
from .polynomial import format_poly, poly_from_json, poly_to_json
from .proofs import check_derivation, derivation_from_json, soundness_spot_check
from .suite import SuiteConfig, run_suite


def _text(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            return fh.read()
    return arg


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2 if args.pretty else None, sort_keys=True))
    else:
        print(human)


def _verdict_text(v) -> str:
    if v.ok:
        return f"pass ({v.checked} points)"
    return f"fail at {', '.join(map(str, format_point(v.point)))}"


def _grid(args, n: int, default: int = 8) -> GridSpec:
    return GridSpec(args.grid if args.grid is not None else default, n)


# -- subcommands ----------------------------------------------------------------

def cmd_eval(args) -> int:
    f = parse(_text(args.formula))
    if args.model == "pair":
        point = [tuple(parse_rational(c) for c in v.split(",")) for v in args.point]
        if any(len(p) != 2 for p in point):
            raise ValueError("pair values are written x,y")
        value = eval_pair(f, point)
        _emit(args, {"value": format_point(value)}, "(" + ", ".join(format_point(value)) + ")")
    else:
        value = eval_std(f, [parse_rational(v) for v in args.point])
        _emit(args, {"value": format_point([value])[0]}, format_point([value])[0])
    return 0


def cmd_check_identity(args) -> int:
    if args.input:
        obj = _load_json(args.input)
        lhs, rhs = parse(obj["lhs"]), parse(obj["rhs"])
        model = obj.get("model", "std")
        g = obj.get("grid", {})
        grid = GridSpec(g.get("d", args.grid or 8), g.get("n", max(max_var(lhs), max_var(rhs))))
    else:
        if args.lhs is None or args.rhs is None:
            raise ValueError("give LHS and RHS or --input FILE")
        lhs, rhs = parse(_text(args.lhs)), parse(_text(args.rhs))
        model = args.model
        grid = _grid(args, args.n if args.n is not None else max(max_var(lhs), max_var(rhs)))
    v = check_identity(lhs, rhs, model, grid)
    payload = v.to_dict() | {"grid": {"d": grid.d, "n": grid.n}, "model": model}
    _emit(args, payload, f"{_verdict_text(v)} [model={model}, d={grid.d}, n={grid.n}]")
    return 0 if v.ok else 1


def cmd_check_quasi(args) -> int:
    if args.input:
        obj = _load_json(args.input)
        (pl, pr), (cl, cr) = [map(parse, obj["premise"]), map(parse, obj["conclusion"])]
        model = obj.get("model", "std")
        g = obj.get("grid", {})
        formulas = (pl, pr, cl, cr)
        grid = GridSpec(g.get("d", args.grid or 8), g.get("n", max(map(max_var, formulas))))
    else:
        if None in (args.premise_lhs, args.premise_rhs, args.conclusion_lhs, args.conclusion_rhs):
            raise ValueError("give four formulas or --input FILE")
        pl, pr, cl, cr = (parse(_text(a)) for a in
                          (args.premise_lhs, args.premise_rhs, args.conclusion_lhs, args.conclusion_rhs))
        model = args.model
        grid = _grid(args, args.n if args.n is not None else max(map(max_var, (pl, pr, cl, cr))))
    v = check_quasi_identity((pl, pr), (cl, cr), model, grid)
    payload = v.to_dict() | {"grid": {"d": grid.d, "n": grid.n}, "model": model}
    _emit(args, payload, f"{_verdict_text(v)} [model={model}, d={grid.d}, n={grid.n}]")
    return 0 if v.ok else 1


def cmd_components(args) -> int:
    f = parse(_text(args.formula))
    n = args.n if args.n is not None else max(max_var(f), 1)
    cs = components(f, n)
    payload: dict = {"n": n}
    lines = []
    bound = component_bound(f)
    if bound <= args.limit:
        payload["components"] = [poly_to_json(p) for p in cs]
        lines += [format_poly(p) for p in cs]
    else:
        payload["components"] = None
        payload["bound"] = bound
        lines.append(f"component bound {bound} exceeds --limit {args.limit}; not listed")
    status = 0
    if args.verify:
        v = verify_components(f, cs, _grid(args, n))
        payload["verification"] = v.to_dict() | {"grid": {"d": _grid(args, n).d, "n": n}}
        lines.append(f"verification: {_verdict_text(v)}")
        status = 0 if v.ok else 1
    _emit(args, payload, "\n".join(lines))
    return status


def _poly_arg(args):
    if args.input:
        return poly_from_json(_load_json(args.input), args.n)
    if args.poly is None:
        raise ValueError("give a polynomial or --input FILE")
    return poly_from_json(_text(args.poly), args.n)


def cmd_compile_poly(args) -> int:
    p = _poly_arg(args)
    f = compile_truncated(p)
    grid = _grid(args, p.n)
    v = verify_compile(p, f, grid)
    payload = {"polynomial": poly_to_json(p), "formula": to_sexpr(f), "dag_size": size(f),
               "verification": v.to_dict() | {"grid": {"d": grid.d, "n": grid.n}}}
    _emit(args, payload, f"{to_sexpr(f)}\nverification: {_verdict_text(v)} [d={grid.d}, n={grid.n}]")
    return 0 if v.ok else 1


def cmd_isd(args) -> int:
    spec = ISDSpec.from_json(_load_json(args.spec))
    f = compile_isd(spec)
    grid = _grid(args, spec.n)
    v = verify_compile(spec, f, grid)
    payload = {"formula": to_sexpr(f), "dag_size": size(f),
               "verification": v.to_dict() | {"grid": {"d": grid.d, "n": grid.n}}}
    lines = [to_sexpr(f), f"verification: {_verdict_text(v)} [d={grid.d}, n={grid.n}]"]
    ok = v.ok
    if args.components:
        vc = verify_components(f, components(f, spec.n), grid)
        payload["components_verification"] = vc.to_dict()
        lines.append(f"components: {_verdict_text(vc)}")
        ok = ok and vc.ok
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_check_proof(args) -> int:
    d = derivation_from_json(_load_json(args.proof))
    res = check_derivation(d)
    payload = res.to_dict()
    if res.ok:
        human = f"ok: {len(d.lines)} lines checked in {d.system}"
        if args.spot_check:
            v = soundness_spot_check(d, _grid(args, max([max_var(f) for f in d.theta]
                                                      + [max_var(ln.formula) for ln in d.lines] + [0]), 4))
            payload["spot_check"] = v.to_dict()
            human += f"\nspot check: {_verdict_text(v)}"
            if not v.ok:
                _emit(args, payload, human)
                return 1
    else:
        human = f"rejected at line {res.line}: {res.reason}"
    _emit(args, payload, human)
    return 0 if res.ok else 1


def cmd_pb_suite(args) -> int:
    obj = _load_json(args.config) if args.config else {}
    for key in ("seed", "grid", "instances", "workers"):
        if getattr(args, key) is not None:
            obj[key] = getattr(args, key)
    if args.exploratory:
        obj["exploratory"] = True
    if args.inject_fault:
        obj["inject_fault"] = True
    cfg = SuiteConfig.from_dict(obj)
    report = run_suite(cfg)
    text = report.to_json(timing=not args.no_timing)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        for c in report.checks:
            tag = " (exploratory)" if c.exploratory else ""
            print(f"{c.status.upper():4} {c.name}{tag}  n={c.count} d={c.grid['d']} {c.seconds:.2f}s")
        print(f"seed={report.seed}  {'ALL PASS' if report.ok else 'FAILURES'}")
    return 0 if report.ok else 1


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    common.add_argument("--grid", type=int, metavar="D", help="grid denominator (default 8)")
    common.add_argument("--seed", type=int, metavar="N", help="random seed")

    parser = argparse.ArgumentParser(prog="fmvl", description="Exact tools for fuzzy MV-logic with product and scalars.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula at a point")
    p.add_argument("formula")
    p.add_argument("--point", nargs="*", default=[], metavar="V", help="values of x1, x2, ... (x,y for pairs)")
    p.add_argument("--model", choices=MODELS, default="std")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check-identity", parents=[common], help="check lhs = rhs on a grid")
    p.add_argument("lhs", nargs="?")
    p.add_argument("rhs", nargs="?")
    p.add_argument("--input", metavar="FILE", help='JSON {"lhs","rhs","model","grid":{"d","n"}}')
    p.add_argument("--model", choices=MODELS, default="std")
    p.add_argument("--n", type=int, help="grid dimension (default: largest variable index)")
    p.set_defaults(func=cmd_check_identity)

    p = sub.add_parser("check-quasi", parents=[common], help="check premise => conclusion on a grid")
    p.add_argument("premise_lhs", nargs="?")
    p.add_argument("premise_rhs", nargs="?")
    p.add_argument("conclusion_lhs", nargs="?")
    p.add_argument("conclusion_rhs", nargs="?")
    p.add_argument("--input", metavar="FILE", help='JSON {"premise":[l,r],"conclusion":[l,r],"model","grid"}')
    p.add_argument("--model", choices=MODELS, default="std")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_check_quasi)

    p = sub.add_parser("components", parents=[common], help="polynomial components of a formula")
    p.add_argument("formula")
    p.add_argument("--n", type=int, help="ambient dimension (default: largest variable index)")
    p.add_argument("--verify", action="store_true", help="also verify pointwise on the grid")
    p.add_argument("--limit", type=int, default=20000, help="do not list sets whose size bound exceeds this")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("compile-poly", parents=[common], help="formula for the truncation of a polynomial")
    p.add_argument("poly", nargs="?", help='text such as "2 x1 - 1"')
    p.add_argument("--input", metavar="FILE", help='JSON {"n":..,"terms":[{"coef":"1/2","exps":[..]}]}')
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_compile_poly)

    p = sub.add_parser("isd", parents=[common], help="formula for max-min of truncated polynomials")
    p.add_argument("spec", help='JSON file {"n":2,"rows":[[poly,...],...]} ("-" for stdin)')
    p.add_argument("--components", action="store_true", help="also verify the formula's components")
    p.set_defaults(func=cmd_isd)

    p = sub.add_parser("check-proof", parents=[common], help="check a derivation file")
    p.add_argument("proof")
    p.add_argument("--spot-check", action="store_true", help="also evaluate every line on a grid (default d=4)")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("pb-suite", parents=[common], help="run the seeded property suite")
    p.add_argument("--config", metavar="FILE", help="JSON suite configuration")
    p.add_argument("--instances", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--exploratory", action="store_true", help="also run n = 3 (reported, never gating)")
    p.add_argument("--inject-fault", action="store_true", help="add a failing negative control")
    p.add_argument("--output", metavar="FILE", help="write the JSON report here")
    p.add_argument("--no-timing", action="store_true", help="omit wall times from the JSON report")
    p.set_defaults(func=cmd_pb_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing key {exc}"
        if getattr(args, "json", False):
            print(json.dumps({"error": msg}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
