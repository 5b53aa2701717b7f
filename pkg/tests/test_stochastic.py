import math
from fractions import Fraction as F

import numpy as np
import pytest

from volkenborn.classical import bernoulli_number, bernoulli_poly, euler_number, euler_poly
from volkenborn.exact import Poly
from volkenborn.stochastic import (
    DensityKind,
    McConfig,
    PadicConfig,
    QuadConfig,
    cancellation_mc,
    charfun_check,
    charfun_exact,
    density,
    mc_moment,
    padic_convergence,
    quad_moment,
    raabe_mc,
    sample,
    tail_bound,
    uniform_stream,
    valuation,
    volkenborn_truncated,
)

TOL = 1e-10
LOG, SECH = DensityKind.LOGISTIC, DensityKind.SECH


# -- densities and quadrature --------------------------------------------------


@pytest.mark.parametrize("kind", list(DensityKind))
def test_density_normalized_and_even(kind):
    from scipy.integrate import quad

    total, _ = quad(lambda t: float(density(kind, t)), -np.inf, np.inf)
    assert abs(total - 1) < 1e-10
    t = np.linspace(0, 3, 7)
    assert np.array_equal(density(kind, t), density(kind, -t))


def test_quad_examples():
    re, im = quad_moment(LOG, Poly([1]), F(7, 3))
    assert abs(re - 1) < TOL and im < TOL
    re, _ = quad_moment(LOG, Poly.monomial(1), 0)
    assert abs(re + 0.5) < TOL
    re, _ = quad_moment(LOG, Poly.monomial(2), 0)
    assert abs(re - 1 / 6) < TOL
    re, _ = quad_moment(SECH, Poly.monomial(2), 0)
    assert abs(re) < TOL


def test_logistic_second_moment():
    # B_2 = 1/4 - E L_B^2, so E L_B^2 = 1/12
    re, _ = quad_moment(LOG, Poly([0, 0, -1]), F(1, 2))
    assert abs(re - 1 / 12) < TOL


def test_quad_general_polynomial():
    p = Poly([F(3, 7), -2, 0, F(1, 5), 1])
    for kind, basis in ((LOG, bernoulli_poly), (SECH, euler_poly)):
        exact = sum(float(c) * float(basis(i)(F(1, 3))) for i, c in enumerate(p.coeffs))
        re, im = quad_moment(kind, p, F(1, 3))
        assert abs(re - exact) < 1e-9 and im < TOL


def test_explicit_truncation_rejected_when_tail_too_large():
    with pytest.raises(ValueError, match="tail bound"):
        quad_moment(SECH, Poly.monomial(8), 0, QuadConfig(T=2.0))
    assert tail_bound(SECH, Poly.monomial(8), 0, 40.0) < TOL
    re, _ = quad_moment(SECH, Poly.monomial(3), 0, QuadConfig(T=30.0))
    assert abs(re - float(euler_number(3))) < TOL


def test_tail_bound_dominates_actual_tail():
    from scipy.integrate import quad

    p, T = Poly.monomial(4), 3.0
    f = lambda t: abs(complex(-0.5, t) ** 4) * float(density(LOG, t))
    actual = 2 * quad(f, T, np.inf)[0]
    assert 0 < actual <= tail_bound(LOG, p, 0, T)


def test_charfun():
    assert charfun_exact(LOG, 0) == 1
    assert charfun_check(LOG, [1.0]) < 1e-9
    assert math.isclose(charfun_exact(LOG, 1.0), 0.5 / math.sinh(0.5))
    assert math.isclose(charfun_exact(SECH, 2.0), 1 / math.cosh(1.0))
    assert charfun_check(SECH, [2.0]) < 1e-9
    assert charfun_check(LOG, [0.0]) < 1e-9


# -- Monte Carlo ---------------------------------------------------------------


def test_uniform_stream_open_interval_and_blocks():
    u = uniform_stream(5, 0, 0, 100_000)
    assert u.min() > 0 and u.max() < 1
    assert not np.array_equal(uniform_stream(5, 0, 1, 10), uniform_stream(5, 0, 0, 10))
    assert not np.array_equal(uniform_stream(5, 1, 0, 10), uniform_stream(5, 0, 0, 10))
    assert np.array_equal(uniform_stream(5, 0, 3, 10), uniform_stream(5, 0, 3, 10))


@pytest.mark.parametrize("kind", list(DensityKind))
def test_inverse_cdf_matches_distribution(kind):
    from scipy import stats

    t = sample(kind, uniform_stream(11, 0, 0, 20_000))
    cdf = (lambda s: (1 + np.tanh(np.pi * s)) / 2) if kind is LOG else (lambda s: 2 / np.pi * np.arctan(np.exp(np.pi * s)))
    assert stats.kstest(t, cdf).pvalue > 1e-3


def test_mc_constant_is_exact():
    est = mc_moment(LOG, Poly([1]), F(2), McConfig(1000, 3))
    assert est.mean == 1.0 and est.stderr == 0.0


def test_mc_examples():
    cfg = McConfig(10**6, 2024)
    est = mc_moment(LOG, Poly.monomial(2), 0, cfg)
    assert est.within(F(1, 6))
    est = mc_moment(SECH, Poly.monomial(1), 1, cfg)
    assert est.within(F(1, 2))


def test_mc_bit_reproducible_and_block_independent():
    a = mc_moment(SECH, Poly.monomial(3), F(1, 3), McConfig(200_001, 99))
    b = mc_moment(SECH, Poly.monomial(3), F(1, 3), McConfig(200_001, 99))
    assert a == b
    c = mc_moment(SECH, Poly.monomial(3), F(1, 3), McConfig(200_001, 100))
    assert c.mean != a.mean


def test_cancellation_mc():
    assert cancellation_mc(LOG, 0, F(5), McConfig(1000, 1)).mean == 1.0
    cfg = McConfig(10**6, 17)
    assert cancellation_mc(LOG, 2, 1, cfg).within(1)
    assert cancellation_mc(SECH, 3, 0, cfg).within(0)
    assert cancellation_mc(SECH, 2, F(1, 2), cfg).within(F(1, 4))


def test_raabe_mc():
    m, n, x = 3, 3, F(1, 5)
    target = F(m) ** (-n) * bernoulli_poly(n)(m * x)
    assert raabe_mc(n, x, m, McConfig(10**6, 8)).within(target)


def test_mc_config_validation():
    with pytest.raises(ValueError):
        McConfig(1, 0)
    with pytest.raises(ValueError):
        McConfig(10, -1)
    with pytest.raises(ValueError):
        McConfig(10, 2**64)


# -- finite-sum bridges and p-adic sums ----------------------------------------


def test_power_sum_bridge():
    for n in range(13):
        b = bernoulli_poly(n + 1)
        for M in range(1, 51):
            assert sum(F(x) ** n for x in range(M)) == (b(M) - b(0)) / (n + 1)


def test_alternating_sum_bridge():
    for n in range(13):
        e = euler_poly(n)
        for M in range(1, 51, 2):
            assert sum((-1) ** x * F(x) ** n for x in range(M)) == (e(0) + e(M)) / 2


def test_truncated_sums_match_bridges():
    for p in (2, 3, 5):
        for n in range(6):
            cfg = PadicConfig(p, n, 4)
            for N in range(5):
                M = p**N
                b = bernoulli_poly(n + 1)
                assert volkenborn_truncated(cfg, N) == (b(M) - b(0)) / (n + 1) / M
    for p in (3, 5):
        for n in range(6):
            cfg = PadicConfig(p, n, 3, "fermionic")
            for N in range(4):
                assert volkenborn_truncated(cfg, N) == (euler_number(n) + euler_poly(n)(p**N)) / 2


def test_volkenborn_examples():
    assert volkenborn_truncated(PadicConfig(2, 1, 4), 4) == F(15, 2)
    assert volkenborn_truncated(PadicConfig(3, 1, 1, "fermionic"), 1) == 1
    for p in (2, 3, 7):
        assert volkenborn_truncated(PadicConfig(p, 0, 3), 3) == 1


def test_padic_config_validation():
    with pytest.raises(ValueError):
        PadicConfig(2, 1, 3, "fermionic")
    with pytest.raises(ValueError):
        PadicConfig(1, 1, 3)
    with pytest.raises(ValueError):
        volkenborn_truncated(PadicConfig(3, 1, 2), 3)


def test_valuation():
    assert valuation(F(8), 2) == 3
    assert valuation(F(3, 2), 3) == 1
    assert valuation(F(3, 2), 2) == -1
    assert valuation(F(-50, 7), 5) == 2
    assert valuation(0, 5) == math.inf


def test_padic_anchor_values():
    assert padic_convergence(PadicConfig(2, 1, 4))[3] == (4, 3)
    assert padic_convergence(PadicConfig(3, 1, 1, "fermionic")) == [(1, 1)]
    assert all(v == math.inf for _, v in padic_convergence(PadicConfig(5, 0, 3)))


def test_zero_mode_pattern_n1():
    # S_N - B_1 = p^N / 2
    for N, v in padic_convergence(PadicConfig(2, 1, 8)):
        assert v == N - 1


def test_no_real_convergence():
    # the truncated sums grow without bound in R even though they converge p-adically
    cfg = PadicConfig(3, 2, 6)
    sums = [volkenborn_truncated(cfg, N) for N in range(1, 7)]
    assert all(b > a for a, b in zip(sums, sums[1:]))
    assert abs(sums[-1] - bernoulli_number(2)) > 10**5
