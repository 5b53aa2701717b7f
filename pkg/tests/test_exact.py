from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from volkenborn.exact import (
    Poly,
    binomial,
    format_rational,
    multinomial,
    parse_rational,
    poly_eval_complex,
    poly_shift,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
polys = st.lists(rationals, max_size=8).map(Poly)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert all(binomial(n, 0) == 1 for n in range(20))
    assert binomial(3, 7) == 0


def test_pascal_rule():
    for n in range(1, 65):
        for k in range(1, n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_multinomial_examples():
    assert multinomial(4, [2, 2]) == 6
    assert multinomial(3, [3]) == 1
    assert multinomial(3, [1, 1, 1]) == 6
    assert multinomial(0, []) == 1


def test_multinomial_rejects_bad_sum():
    with pytest.raises(ValueError):
        multinomial(4, [1, 1])


def test_shift_examples():
    assert poly_shift(Poly([0, 0, 1]), 1) == Poly([1, 2, 1])
    p = Poly([F(1, 6), -1, 1])
    assert poly_shift(p, 0) == p
    assert poly_shift(Poly([F(-1, 2), 1]), 1) == Poly([F(1, 2), 1])


def test_eval_complex_examples():
    assert poly_eval_complex(Poly([0, 0, 1]), 1j) == -1
    assert poly_eval_complex(Poly([1]), 3 - 2j) == 1
    assert poly_eval_complex(Poly([F(-1, 2), 1]), 0.5) == 0


def test_normalization_and_zero():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).is_zero()
    assert Poly().degree == -1
    assert Poly([F(2, 4)]).coeffs[0] == F(1, 2)


def test_canonical_text():
    assert str(Poly([F(1, 6), -1, 1])) == "[1/6, -1, 1]"
    assert str(Poly()) == "[]"
    assert format_rational(F(-691, 2730)) == "-691/2730"
    assert format_rational(3) == "3"


@pytest.mark.parametrize("bad", ["", "1/0", "0.5", "a/b", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_divmod():
    q, r = Poly([-1, 0, 1]).divmod(Poly([-1, 1]))
    assert q == Poly([1, 1]) and r.is_zero()
    q, r = Poly([1, 0, 1]).divmod(Poly([0, 1]))
    assert q == Poly([0, 1]) and r == Poly([1])


@given(polys, polys)
def test_degree_of_product(p, q):
    if p and q:
        assert (p * q).degree == p.degree + q.degree
    else:
        assert (p * q).is_zero()


@given(polys, rationals, rationals)
def test_shift_composes(p, a, b):
    assert poly_shift(poly_shift(p, a), b) == poly_shift(p, a + b)


@given(polys, rationals, rationals)
def test_shift_matches_evaluation(p, c, x):
    assert poly_shift(p, c)(x) == p(x + c)


@given(polys, polys, rationals)
def test_compose_matches_evaluation(p, q, x):
    assert p.compose(q)(x) == p(q(x))


@given(rationals, rationals)
def test_rational_round_trip(a, c):
    assert (a + c) - c == a


@given(polys)
@settings(max_examples=50)
def test_poly_text_round_trip(p):
    assert Poly.parse(str(p)) == p


@given(polys, polys)
def test_divmod_reconstructs(p, d):
    if d:
        q, r = p.divmod(d)
        assert q * d + r == p
        assert r.degree < d.degree
