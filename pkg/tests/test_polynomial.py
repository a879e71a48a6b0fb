import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fmvl.polynomial import (
    Polynomial, Summand, add, decompose, eval_poly, format_poly, mul, neg, parse_poly, poly_from_json,
    poly_to_json, recompose, rho_eval, scale,
)

x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)


def test_ring_examples():
    assert add(x1, 1 - x1) == Polynomial.const(2, 1)
    assert mul(x1, x2) == Polynomial(2, {(1, 1): 1})
    assert scale(F(1, 2), Polynomial(2, {(1, 0): 2})) == x1
    assert neg(x1) == Polynomial(2, {(1, 0): -1})


def test_zero_coefficients_pruned():
    p = add(x1, neg(x1))
    assert p.terms == {} and not p
    assert Polynomial(2, {(1, 0): 0, (0, 1): 3}).terms == {(0, 1): 3}


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        add(x1, Polynomial.var(1, 1))
    with pytest.raises(ValueError):
        Polynomial(2, {(1,): 1})
    with pytest.raises(ValueError):
        eval_poly(x1, [F(1, 2)])


def test_eval_examples():
    p = parse_poly("2 x1 - 1")
    assert eval_poly(p, [F(3, 4)]) == F(1, 2)
    assert eval_poly(mul(x1, x2), [F(1, 2), F(1, 3)]) == F(1, 6)
    assert eval_poly(Polynomial.const(3, 5), [0, 1, F(1, 7)]) == 5


def test_rho_examples():
    p = parse_poly("2 x1 - 1")
    assert rho_eval(p, [F(1, 4)]) == 0
    assert rho_eval(p, [F(3, 4)]) == F(1, 2)
    assert rho_eval(Polynomial.const(1, 5), [F(1, 3)]) == 1


def test_decompose_examples():
    assert decompose(Polynomial(1, {(1,): F(5, 2)})) == [Summand(F(1), (1,)), Summand(F(1), (1,)),
                                                          Summand(F(1, 2), (1,))]
    assert decompose(Polynomial(1, {(1,): -1})) == [Summand(F(-1), (1,))]
    assert decompose(Polynomial(2, {})) == []


def test_decompose_order_constants_first_then_grlex():
    p = parse_poly("x1^2 + 3/2 x2 - 2 + x1", 2)
    ss = decompose(p)
    assert [s.exps for s in ss] == [None, None, (0, 1), (0, 1), (1, 0), (2, 0)]
    assert [s.coef for s in ss] == [-1, -1, 1, F(1, 2), 1, 1]


def test_summand_bounds_enforced():
    with pytest.raises(ValueError):
        Summand(F(3, 2), None)
    with pytest.raises(ValueError):
        Summand(F(0), (1,))


def test_text_format_round_trip():
    p = parse_poly("1/2 x1^2 x2 - 3 x2 + 7/3")
    assert format_poly(p) == "1/2 x1^2 x2 - 3 x2 + 7/3"
    assert parse_poly(format_poly(p)) == p
    assert format_poly(Polynomial(1, {})) == "0"
    assert parse_poly("-x1 + x1") == Polynomial(1, {})


def test_json_round_trip():
    p = parse_poly("1/2 x1 x2 - 1", 3)
    obj = poly_to_json(p)
    assert obj["n"] == 3 and {"coef": "1/2", "exps": [1, 1, 0]} in obj["terms"]
    assert poly_from_json(obj) == p
    assert poly_from_json("x2", 3) == Polynomial.var(3, 2)


def rand_poly(rng, n, max_coef=10, max_deg=4, terms=4):
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(n)] += 1
        den = rng.randint(1, 8)
        out[tuple(e)] = F(rng.randint(-max_coef * den, max_coef * den), den)
    return Polynomial(n, out)


def test_recompose_inverts_decompose():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(1, 3)
        p = rand_poly(rng, n)
        ss = decompose(p)
        assert all(0 < abs(s.coef) <= 1 for s in ss)
        assert recompose(ss, n) == p


def test_ring_laws():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 3)
        p, q, r = (rand_poly(rng, n, 3, 2, 3) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p and p + q == q + p
        assert p - p == Polynomial(n, {})


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(-10, 10, max_denominator=8), min_size=1, max_size=4),
       st.lists(st.fractions(0, 1, max_denominator=8), min_size=2, max_size=2))
def test_rho_in_unit_interval(coefs, point):
    p = Polynomial(2, {(i, len(coefs) - i): c for i, c in enumerate(coefs)})
    v = rho_eval(p, point)
    assert 0 <= v <= 1
    assert v == min(F(1), max(F(0), eval_poly(p, point)))
