import random
from fractions import Fraction as F

import pytest

from fmvl.compiler import ISDSpec, compile_isd, compile_truncated, isd_value, monomial_formula, verify_compile
from fmvl.components import components, verify_components
from fmvl.formula import ZERO, Prod, Var, one, parse, to_sexpr
from fmvl.models import GridSpec, check_identity, eval_std, eval_std_many
from fmvl.polynomial import Polynomial, parse_poly, rho_eval
from fmvl.randgen import PolyParams, random_isd, random_poly


def test_constant_half():
    f = compile_truncated(parse_poly("1/2", 1))
    assert f == parse("(scal 1/2 one)")
    assert eval_std(f, [F(1, 3)]) == F(1, 2)


def test_negative_singleton_is_zero():
    assert compile_truncated(parse_poly("-x1")) == ZERO


def test_zero_polynomial():
    assert compile_truncated(Polynomial(2, {})) == ZERO


def test_two_x_minus_one():
    p = parse_poly("2 x1 - 1")
    f = compile_truncated(p)
    assert eval_std(f, [F(3, 4)]) == F(1, 2)
    assert eval_std(f, [F(1, 4)]) == 0
    v = verify_compile(p, f, GridSpec(8, 1))
    assert v and v.checked == 9


def test_monomial_formula():
    assert monomial_formula((2, 0, 1)) == Prod(Prod(Var(1), Var(1)), Var(3))
    assert monomial_formula((0, 0)) == one()


def test_verify_compile_examples():
    p = parse_poly("x1 + x2")
    v = verify_compile(p, ZERO, GridSpec(2, 2))
    assert not v.ok
    # Lexicographic order reaches (0, 1/2) before (1/2, 0); both disagree with zero.
    assert v.point == (0, F(1, 2))
    assert rho_eval(p, (F(1, 2), 0)) == F(1, 2) != eval_std(ZERO, (F(1, 2), 0))
    assert verify_compile(Polynomial(1, {}), ZERO, GridSpec(1, 1))


def test_verify_compile_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_compile(parse_poly("x1", 2), ZERO, GridSpec(2, 1))


@pytest.mark.parametrize("text, n", [
    ("3 x1 - 2", 1), ("x1 - x2", 2), ("1 - x1 - x2", 2), ("5/2 x1 x2 - 3/4", 2), ("-1/2 + x1^2 + x2^3", 2),
    ("2 - 3 x1", 1), ("x1 + x2 + x3 - 1", 3), ("-x1 - x2 + 1/3", 2), ("7/3 x1^4 - 3 x1^2 + 1/2", 1),
])
def test_hand_picked_polynomials(text, n):
    p = parse_poly(text, n)
    assert verify_compile(p, compile_truncated(p), GridSpec(8, n))


def test_random_polynomials():
    rng = random.Random(31)
    for _ in range(50):
        n = rng.randint(1, 3)
        p = random_poly(rng, PolyParams(n=n, max_degree=4, max_coef=3, max_den=8))
        f = compile_truncated(p)
        assert verify_compile(p, f, GridSpec(8, n)), str(p)


def test_larger_coefficients():
    rng = random.Random(32)
    for _ in range(20):
        n = rng.randint(1, 2)
        p = random_poly(rng, PolyParams(n=n, max_degree=3, max_coef=6, max_den=5, max_terms=4))
        assert verify_compile(p, compile_truncated(p), GridSpec(6, n)), str(p)


def test_compile_is_deterministic():
    p = parse_poly("5/2 x1 x2 - 3/4 + x2^2", 2)
    assert to_sexpr(compile_truncated(p)) == to_sexpr(compile_truncated(p))


def test_isd_examples():
    spec = ISDSpec.from_json({"n": 2, "rows": [["x1"], ["x2"]]})
    assert eval_std(compile_isd(spec), [F(1, 4), F(3, 4)]) == F(3, 4)
    spec = ISDSpec.from_json({"n": 2, "rows": [["x1", "x2"]]})
    assert eval_std(compile_isd(spec), [F(1, 4), F(3, 4)]) == F(1, 4)
    p = parse_poly("2 x1 - 1")
    f = compile_isd(ISDSpec(1, ((p,),)))
    assert check_identity(f, compile_truncated(p), "std", GridSpec(8, 1))


def test_isd_validation():
    with pytest.raises(ValueError):
        ISDSpec(1, ())
    with pytest.raises(ValueError):
        ISDSpec(1, ((),))
    with pytest.raises(ValueError):
        ISDSpec(2, ((parse_poly("x1", 1),),))
    with pytest.raises(ValueError):
        ISDSpec.from_json({"n": 1, "rows": [["x1"], ["x1", "1"]]})


def test_isd_json_round_trip():
    spec = ISDSpec.from_json({"n": 2, "rows": [["x1 - 1/2", "x2"], ["x1 x2", "1"]]})
    assert ISDSpec.from_json(spec.to_json()) == spec


def test_random_isd_specs():
    rng = random.Random(33)
    for _ in range(30):
        n = rng.randint(1, 2)
        spec = random_isd(rng, PolyParams(n=n))
        f = compile_isd(spec)
        grid = GridSpec(8, n)
        assert verify_compile(spec, f, grid)
        assert eval_std_many(f, list(grid.points())) == [isd_value(spec, pt) for pt in grid.points()]


def test_compiled_formulas_have_sound_components():
    rng = random.Random(34)
    for _ in range(30):
        n = rng.randint(1, 2)
        p = random_poly(rng, PolyParams(n=n))
        f = compile_truncated(p)
        assert verify_components(f, components(f, n), GridSpec(8, n))


def test_rho_oracle_spot():
    p = parse_poly("3 x1 x2 - x1 - 1/2", 2)
    f = compile_truncated(p)
    for pt in GridSpec(5, 2).points():
        assert eval_std(f, pt) == rho_eval(p, pt)
