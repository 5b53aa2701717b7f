import json
from fractions import Fraction as F

import pytest

from volkenborn.classical import bernoulli_poly, euler_number, euler_poly
from volkenborn.exact import Poly
from volkenborn.identities import (
    IDENTITY_IDS,
    Identity,
    bernstein_poly,
    beta_poly,
    correction_search,
    get_identity,
    make_grid,
    verify,
)
from volkenborn.norlund import ParamVec

X = Poly.x()


def residual(iid, **params):
    lhs, rhs = get_identity(iid).evaluate(params)
    return lhs - rhs


def sides(iid, **params):
    return get_identity(iid).evaluate(params)


def test_catalog_is_complete():
    assert set(IDENTITY_IDS) == {
        "BERN_NUM_3CASE", "KIM1_POLY", "KIM_EULER_NUM", "KIM_POLY_EULER", "EULER_SIGN_LEMMA",
        "BINOMIAL_BASE", "CANCELLATION_B", "CANCELLATION_E", "PROP42", "PROP43", "PROP44",
        "MULTINOMIAL_B_POLY", "MULTINOMIAL_B_NUM", "NORLUND_KIM", "MULTIDIM_EULER_KIM",
        "RAABE_B", "RAABE_E_ODD", "NIELSEN_EVEN", "EVEN_RAABE_HIGHER",
    }
    assert get_identity("raabe-e-odd").id == "RAABE_E_ODD"
    with pytest.raises(ValueError):
        get_identity("NOPE")


# -- worked examples, both sides checked against hand arithmetic ---------------


def test_bern_num_3case_hand_value():
    lhs, rhs = sides("BERN_NUM_3CASE", n=2, k=1)
    # B_1 + B_2 = -1/2 + 1/6; B_2 - B_1 + (-1)^1
    assert lhs == rhs == Poly([F(-1, 3)])


def test_kim1_poly_hand_value():
    lhs, rhs = sides("KIM1_POLY", n=2, k=1)
    assert lhs == rhs == Poly([F(-1, 3), 0, 1])


def test_raabe_e_odd_hand_value():
    lhs, rhs = sides("RAABE_E_ODD", m=3, n=1, k=1, a=ParamVec([1]))
    assert lhs == rhs == Poly([F(-1, 6), 1])


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("a", [ParamVec([1]), ParamVec([2, F(-1, 3)]), ParamVec([F(1, 2), 3, -1])])
def test_raabe_b_single_multiplier_collapses(n, a):
    assert residual("RAABE_B", m=1, n=n, k=len(a), a=a).is_zero()


def test_multidim_euler_kim_order_one_hand_value():
    lhs, rhs = sides("MULTIDIM_EULER_KIM", p=1, n=1, k=0)
    assert lhs == rhs == Poly([F(3, 2), -1])


def test_even_raabe_higher_anchor():
    lhs, rhs = sides("EVEN_RAABE_HIGHER", m=2, n=1, k=1, a=ParamVec([1]))
    assert lhs == rhs == Poly([F(-1, 2)])


def test_raabe_usual_form():
    # m^(1-n) B_n(mx) = sum_l B_n(x + l/m)
    for m in (2, 3, 4):
        for n in range(8):
            rhs = sum((bernoulli_poly(n).shift(F(l, m)) for l in range(m)), Poly())
            assert bernoulli_poly(n).dilate(m).scale(F(m) ** (1 - n)) == rhs
            assert residual("RAABE_B", m=m, n=n, k=1, a=ParamVec([1])).is_zero()


# -- grid-wide invariants ------------------------------------------------------


def test_binomial_base_formal_identity():
    assert verify("BINOMIAL_BASE", n_max=30).ok


@pytest.mark.parametrize("iid", ["CANCELLATION_B", "CANCELLATION_E"])
def test_cancellation(iid):
    assert verify(iid, n_max=30).ok


def test_kim_poly_euler_at_zero_gives_delta_k_form():
    # the x = 0 specialization carries (-1)^(n+k+1) sum C(k,j) E_{n-j} + 2 delta_k
    from math import comb

    for n in range(16):
        for k in range(n + 1):
            lhs, rhs = sides("KIM_POLY_EULER", n=n, k=k)
            s = sum(comb(k, j) * euler_number(n - j) for j in range(k + 1))
            assert lhs(0) == rhs(0) == (-1) ** (n + k + 1) * s + 2 * (k == 0)


def test_euler_number_forms_fail_only_on_diagonal():
    for iid in ("KIM_EULER_NUM", "EULER_SIGN_LEMMA"):
        report = verify(iid, n_max=20)
        assert {(r.params["n"], r.params["k"]) for r in report.failures()} == {(n, n) for n in range(21)}
        assert {str(r.residual) for r in report.failures()} == {"[-2]"}


def test_bern_num_remark_matches_third_case():
    from math import comb

    from volkenborn.classical import bernoulli_number as B

    for n in range(31):
        rhs = sum(comb(n, j) * (-1) ** j * B(n - j) for j in range(n + 1)) + n * (-1) ** (n - 1)
        assert B(n) == rhs, n


def test_kim1_extra_term_closed_form():
    # the printed correction equals d/dx [x^(n-k) (x-1)^k]
    from volkenborn.identities import _kim1_extra_term

    for n in range(12):
        for k in range(n + 1):
            assert _kim1_extra_term(n, k) == (X ** (n - k) * Poly([-1, 1]) ** k).derivative()


# -- Beta and Bernstein polynomials --------------------------------------------


def test_beta_and_bernstein():
    assert beta_poly(0, 0) == Poly([1])
    assert beta_poly(1, 2) == Poly([0, 1, 1])
    assert bernstein_poly(1, 2) == Poly([0, 2, -2])
    with pytest.raises(ValueError):
        beta_poly(3, 2)
    with pytest.raises(ValueError):
        bernstein_poly(3, 2)


def test_bernstein_partition_of_unity():
    for n in range(10):
        assert sum((bernstein_poly(k, n) for k in range(n + 1)), Poly()) == Poly([1])


# -- grids, skips and reports --------------------------------------------------


def test_side_condition_violations_are_skipped():
    report = verify("RAABE_E_ODD", [{"m": 2, "n": 1, "k": 1, "a": ParamVec([1])},
                                    {"m": 3, "n": 1, "k": 1, "a": ParamVec([1])}])
    assert report.skip_count == 1 and report.pass_count == 1 and report.ok
    assert report.results[0].skipped == "requires m odd"
    report = verify("KIM1_POLY", [{"n": 2, "k": 3}, {"n": 2}])
    assert report.skip_count == 2
    assert "missing" in report.results[1].skipped


def test_grid_is_lexicographic():
    grid = make_grid("NORLUND_KIM", n_max=3, p_values=(1, 2))
    keys = [(g["p"], g["n"], g["k"]) for g in grid]
    assert keys == sorted(keys)


def test_report_serialization():
    report = verify("EVEN_RAABE_HIGHER", n_max=2, m_values=(2,), a_vectors=[ParamVec([2])], search=True)
    lines = report.to_json_lines().splitlines()
    first = json.loads(lines[0])
    assert list(first) == ["id", "params", "residual", "pass"]
    assert first["params"] == {"m": 2, "n": 0, "k": 1, "a": "2"}
    summary = json.loads(lines[-1])
    assert summary["summary"]["fail"] == report.fail_count > 0
    assert summary["summary"]["correction"] == "parameterized E on LHS"
    for rec in map(json.loads, lines[:-1]):
        assert rec["pass"] == (Poly.parse(rec["residual"]).is_zero())
    csv_lines = report.to_csv().splitlines()
    assert csv_lines[0] == "id,params,residual,pass,skipped"
    assert csv_lines[1].startswith("EVEN_RAABE_HIGHER,m=2;n=0;k=1;a=2,")
    assert "FAIL" in report.to_text()


def test_max_residual_degree():
    assert verify("KIM1_POLY", n_max=5).max_residual_degree == -1
    report = verify("EVEN_RAABE_HIGHER", n_max=5, m_values=(2,), a_vectors=[ParamVec([2])])
    assert report.max_residual_degree == max(r.residual.degree for r in report.failures())


# -- correction search ---------------------------------------------------------


def test_correction_not_applicable_when_identity_holds():
    assert correction_search("KIM1_POLY", make_grid("KIM1_POLY", n_max=6)) == "not applicable"


def test_correction_finds_planted_global_sign():
    planted = Identity("PLANTED", ("n",), lambda n: (-euler_poly(n) - euler_poly(n).shift(1), Poly.monomial(n, 2)))
    grid = [{"n": n} for n in range(8)]
    assert verify(planted, grid).fail_count == 8
    assert correction_search(planted, grid) == "global sign"


def test_correction_finds_planted_sign_factor():
    planted = Identity("PLANTED", ("n", "k"), lambda n, k: (Poly([(-1) ** (n + k)]), Poly([1])))
    grid = [{"n": n, "k": k} for n in range(4) for k in range(n + 1)]
    assert correction_search(planted, grid) == "(-1)^(n+k) factor"


def test_correction_none_found():
    planted = Identity("PLANTED", ("n",), lambda n: (Poly([n]), Poly([0])))
    assert correction_search(planted, [{"n": n} for n in range(4)]) == "none found"


def test_even_raabe_higher_correction():
    grid = make_grid("EVEN_RAABE_HIGHER", n_max=6, m_values=(2, 4),
                     a_vectors=[ParamVec([1]), ParamVec([1, 1]), ParamVec([2, F(1, 2)])])
    report = verify("EVEN_RAABE_HIGHER", grid)
    assert all(r.passed for r in report.results if all(v == 1 for v in r.params["a"]))
    assert correction_search("EVEN_RAABE_HIGHER", grid) == "parameterized E on LHS"


def test_euler_number_corrections():
    for iid in ("KIM_EULER_NUM", "EULER_SIGN_LEMMA"):
        assert correction_search(iid, make_grid(iid, n_max=12)) == "extra -2*delta(n-k) term"
