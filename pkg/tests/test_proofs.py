import random
from dataclasses import replace
from fractions import Fraction as F

import pytest

from fmvl.formula import Var, imp, one, parse
from fmvl.models import GridSpec, check_identity
from fmvl.proofs import (
    AXIOMS, MP, SP, Axiom, Derivation, Hyp, Line, bundled_derivations, check_derivation, derivation_from_json,
    derivation_to_json, is_axiom_instance, soundness_spot_check,
)
from fmvl.randgen import FormulaParams, random_axiom_instance, random_formula

v1, v2 = Var(1), Var(2)


def test_schema_list_in_fixed_order():
    assert [a.name for a in AXIOMS] == ["L1", "L2", "L3", "L4", "R1", "R2", "R3", "R4",
                                        "P1", "P2", "P3", "P4", "P5", "A1", "A2"]


def test_is_axiom_instance_examples():
    assert is_axiom_instance(parse("(imp (var 1) (imp (var 2) (var 1)))")) == ("L1", {"?phi": v1, "?psi": v2})
    assert is_axiom_instance(parse("(imp (prod (var 1)(var 2)) (var 1))")) == ("P4", {"?phi": v1, "?psi": v2})
    assert is_axiom_instance(parse("(imp (var 1) (var 2))")) is None


@pytest.mark.parametrize("text, name", [
    ("(iff (nabla 1/2 (var 1)) (imp (nabla 1/4 (var 1)) (nabla 3/4 (var 1))))", "R2"),
    ("(iff (nabla 0 (var 1)) (imp (nabla 3/4 (var 1)) (nabla 1/4 (var 1))))", "R2"),
    ("(iff (nabla 1/2 (nabla 1/3 (var 1))) (nabla 1/6 (var 1)))", "R3"),
    ("(iff (nabla 1 (var 2)) (var 2))", "R4"),
])
def test_side_conditions_accept(text, name):
    assert is_axiom_instance(parse(text))[0] == name


@pytest.mark.parametrize("text", [
    "(iff (nabla 1/3 (var 1)) (imp (nabla 1/4 (var 1)) (nabla 3/4 (var 1))))",
    "(iff (nabla 1/2 (nabla 1/3 (var 1))) (nabla 1/5 (var 1)))",
    "(iff (nabla 1/2 (var 2)) (var 2))",
])
def test_side_conditions_reject(text):
    assert is_axiom_instance(parse(text)) is None


def test_unknown_system():
    with pytest.raises(ValueError):
        is_axiom_instance(v1, "K")


@pytest.mark.parametrize("ax", AXIOMS, ids=lambda a: a.name)
def test_schema_soundness(ax):
    rng = random.Random(f"sound:{ax.name}")
    grid = GridSpec(6, 3)
    for _ in range(50):
        f = random_axiom_instance(rng, ax, FormulaParams(depth=5, n=3, max_den=8))
        assert is_axiom_instance(f) is not None
        assert check_identity(f, one(), "std", grid)


def test_accepted_instances_are_tautologies():
    rng = random.Random(8)
    grid = GridSpec(6, 2)
    found = 0
    for _ in range(3000):
        f = random_formula(rng, FormulaParams(depth=4, n=2, max_den=4))
        if is_axiom_instance(f) is not None:
            found += 1
            assert check_identity(f, one(), "std", grid)
    assert found > 0


# -- derivations --------------------------------------------------------------------

L1_MP = Derivation("FMVL", [v1], [
    Line(1, v1, Hyp()),
    Line(2, parse("(imp (var 1) (imp (var 2) (var 1)))"), Axiom("L1")),
    Line(3, imp(v2, v1), MP(1, 2)),
])
SP_DERIV = Derivation("FMVL+", [parse("(neg (prod (var 1)(var 1)))")], [
    Line(1, parse("(neg (prod (var 1)(var 1)))"), Hyp()),
    Line(2, parse("(neg (var 1))"), SP(1)),
])


def test_l1_mp_ok():
    res = check_derivation(L1_MP)
    assert res and res.to_dict()["result"] == "ok"
    assert res.axioms == {2: "L1"}


def test_sp_ok_in_fmvl_plus():
    assert check_derivation(SP_DERIV)


def test_sp_rejected_in_fmvl():
    res = check_derivation(replace(SP_DERIV, system="FMVL"))
    assert not res and res.line == 2 and "SP not available" in res.reason
    assert res.to_dict() == {"result": "rejected", "error": {"line": 2, "reason": res.reason}}


@pytest.mark.parametrize("lines, bad_line, fragment", [
    ([Line(1, v2, Hyp())], 1, "hypothesis"),
    ([Line(1, imp(v1, v2), Axiom())], 1, "not an axiom"),
    ([Line(1, imp(v1, v2), Axiom("Z9"))], 1, "unknown axiom"),
    ([Line(1, parse("(imp (var 1) (imp (var 2) (var 1)))"), Axiom("L2"))], 1, "not an instance"),
    ([Line(1, v1, Hyp()), Line(2, v2, MP(1, 3))], 2, "forward reference"),
    ([Line(1, v1, Hyp()), Line(2, v1, MP(1, 1))], 2, "bad MP shape"),
    ([Line(1, v1, Hyp()), Line(1, v1, Hyp())], 1, "strictly increasing"),
    ([Line(1, v1, Hyp()), Line(2, v2, MP(1, 7))], 2, "forward reference"),
])
def test_rejections(lines, bad_line, fragment):
    res = check_derivation(Derivation("FMVL", [v1], lines))
    assert not res and res.line == bad_line and fragment in res.reason


def test_bad_sp_shape():
    d = Derivation("FMVL+", [parse("(neg (prod (var 1)(var 2)))")], [
        Line(1, parse("(neg (prod (var 1)(var 2)))"), Hyp()),
        Line(2, parse("(neg (var 1))"), SP(1)),
    ])
    res = check_derivation(d)
    assert not res and res.line == 2 and "bad SP shape" in res.reason


def test_axiom_substitution_must_agree():
    good = Line(2, parse("(imp (var 1) (imp (var 2) (var 1)))"), Axiom("L1", {"phi": v1, "?psi": v2}))
    bad = Line(2, good.formula, Axiom("L1", {"?phi": v2}))
    assert check_derivation(Derivation("FMVL", [], [good]))
    assert not check_derivation(Derivation("FMVL", [], [bad]))


def test_bundled_derivations():
    ds = bundled_derivations()
    assert set(ds) == {"l1_mp", "l1_mp_chain", "semiprime"}
    for d in ds.values():
        assert check_derivation(d)
        assert soundness_spot_check(d, None)
    res = check_derivation(replace(ds["semiprime"], system="FMVL"))
    assert not res and res.line == 2


def test_fmvl_acceptance_implies_fmvl_plus():
    for d in list(bundled_derivations().values()) + [L1_MP]:
        if check_derivation(replace(d, system="FMVL")):
            assert check_derivation(replace(d, system="FMVL+"))


def test_spot_check_examples():
    assert soundness_spot_check(L1_MP, GridSpec(4, 2))
    assert soundness_spot_check(SP_DERIV, GridSpec(4, 1))


def test_spot_check_negative_control():
    broken = Derivation("FMVL", [], [Line(1, imp(v1, v2), Axiom("L1"))])
    with pytest.raises(ValueError):
        soundness_spot_check(broken, GridSpec(4, 2))
    v = soundness_spot_check(broken, GridSpec(4, 2), require_valid=False)
    assert not v and v.line == 1 and v.point == (F(1, 4), 0)


def test_json_round_trip():
    obj = derivation_to_json(L1_MP)
    assert obj["lines"][2]["just"] == {"type": "mp", "from": [1, 2]}
    assert check_derivation(derivation_from_json(obj))
    d = derivation_from_json({"system": "FMVL", "theta": [], "lines": [
        {"id": 1, "formula": "(iff (nabla 1 (var 1)) (var 1))",
         "just": {"type": "axiom", "name": "R4", "subst": {"?phi": "(var 1)", "?a": "1"}}}]})
    assert check_derivation(d)


def test_unknown_justification_type():
    with pytest.raises(ValueError):
        derivation_from_json({"lines": [{"id": 1, "formula": "zero", "just": {"type": "magic"}}]})
