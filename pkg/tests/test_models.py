import random
from fractions import Fraction as F

import pytest

from fmvl.formula import ZERO, Neg, Oplus, Prod, Var, imp, parse
from fmvl.identities import (
    commutativity_law, fmv_laws, formally_real_identity, pmv_laws, rmv_laws, semiprime_quasi_identity,
    standard_laws,
)
from fmvl.models import GridSpec, check_identity, check_quasi_identity, eval_pair, eval_std, eval_std_many
from fmvl.randgen import FormulaParams, random_formula

x = Var(1)


def test_eval_std_examples():
    assert eval_std(parse("(oplus (var 1) (var 2))"), [F(7, 10), F(1, 2)]) == 1
    assert eval_std(parse("(scal 1/2 (var 1))"), [F(1, 3)]) == F(1, 6)
    assert eval_std(parse("(neg (var 1))"), [F(1, 4)]) == F(3, 4)


def test_eval_std_missing_variable():
    with pytest.raises(ValueError):
        eval_std(parse("(var 3)"), [F(1, 2)])


def test_eval_pair_examples():
    assert eval_pair(Prod(x, x), [(0, F(1, 2))]) == (0, 0)
    assert eval_pair(Oplus(x, x), [(F(1, 4), F(1, 4))]) == (F(1, 2), F(1, 2))
    assert eval_pair(Neg(x), [(0, 1)]) == (1, 0)


def test_grid_order_is_lexicographic():
    pts = list(GridSpec(2, 2).points())
    assert pts[:4] == [(0, 0), (0, F(1, 2)), (0, 1), (F(1, 2), 0)]
    assert len(pts) == len(GridSpec(2, 2)) == 9
    with pytest.raises(ValueError):
        GridSpec(0, 1)


def test_check_identity_examples():
    lhs = parse("(prod (var 1) (var 2))")
    rhs = parse("(prod (wedge (var 1)(var 2)) (vee (var 1)(var 2)))")
    assert check_identity(lhs, rhs, "std", GridSpec(8, 2))
    v = check_identity(x, Neg(x), "std", GridSpec(2, 1))
    assert not v and v.point == (0,)
    assert v.to_dict() == {"result": "fail", "point": ["0"]}


def test_check_identity_dimension_mismatch():
    with pytest.raises(ValueError):
        check_identity(Var(3), ZERO, "std", GridSpec(2, 2))


def test_formally_real_identity_d4():
    law = formally_real_identity()
    v = check_identity(law.lhs, law.rhs, "std", GridSpec(4, 6))
    assert v and v.checked == 15625


def test_quasi_identity_examples():
    premise, conclusion = semiprime_quasi_identity()
    assert check_quasi_identity(premise, conclusion, "std", GridSpec(8, 1))
    w = check_quasi_identity(premise, conclusion, "pair", GridSpec(2, 1))
    assert not w and w.point == ((0, F(1, 2)),)
    w = check_quasi_identity((x, x), (x, ZERO), "std", GridSpec(1, 1))
    assert not w and w.point == (1,)


@pytest.mark.parametrize("law", standard_laws(), ids=lambda law: law.name)
def test_standard_laws_d6(law):
    assert check_identity(law.lhs, law.rhs, "std", GridSpec(6, law.n))


def test_laws_hold_in_pair_model():
    # The pair model is an fMV-algebra, so every law checked on [0,1] must hold there too.
    for law in pmv_laws() + rmv_laws(F(1, 2), F(1, 3)) + fmv_laws(F(1, 3)) + [commutativity_law()]:
        assert check_identity(law.lhs, law.rhs, "pair", GridSpec(2, law.n)), law.name


def test_formally_real_identity_also_holds_in_pair_model():
    # Products vanish in the second coordinate and the first coordinate is standard.
    law = formally_real_identity()
    assert check_identity(law.lhs, law.rhs, "pair", GridSpec(1, 6))


def test_values_stay_in_unit_interval():
    rng = random.Random(3)
    pts = list(GridSpec(4, 3).points())
    for _ in range(100):
        f = random_formula(rng, FormulaParams(depth=6, n=3))
        assert all(0 <= v <= 1 for v in eval_std_many(f, pts))


def test_modus_ponens_preserves_one():
    rng = random.Random(5)
    pts = list(GridSpec(4, 2).points())
    for _ in range(150):
        phi = random_formula(rng, FormulaParams(depth=4, n=2))
        psi = random_formula(rng, FormulaParams(depth=4, n=2))
        for a, b, c in zip(eval_std_many(phi, pts), eval_std_many(imp(phi, psi), pts), eval_std_many(psi, pts)):
            if a == 1 and b == 1:
                assert c == 1


def test_semiprime_rule_preserves_one():
    rng = random.Random(6)
    pts = list(GridSpec(6, 2).points())
    hits = 0
    for _ in range(300):
        phi = random_formula(rng, FormulaParams(depth=4, n=2))
        for a, b in zip(eval_std_many(Neg(Prod(phi, phi)), pts), eval_std_many(Neg(phi), pts)):
            if a == 1:
                hits += 1
                assert b == 1
    assert hits > 0


def test_unknown_model():
    with pytest.raises(ValueError):
        check_identity(x, x, "hilbert", GridSpec(2, 1))
