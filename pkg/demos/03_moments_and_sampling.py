"""
Polynomials as expectations
===========================

B_n(x) is the mean of (x + iL - 1/2)^n for a logistic variable L with density
(pi/2) sech^2(pi t). E_n(x) is the same for a hyperbolic secant variable.
We check this by quadrature and by Monte Carlo.
"""
from fractions import Fraction as F

import numpy as np

from volkenborn.classical import bernoulli_poly
from volkenborn.exact import Poly
from volkenborn.stochastic import (
    DensityKind,
    McConfig,
    cancellation_mc,
    charfun_check,
    exact_moment,
    mc_moment,
    quad_moment,
    raabe_mc,
)

x = F(1, 3)
for kind in DensityKind:
    for n in (2, 5, 10):
        re, im = quad_moment(kind, Poly.monomial(n), x)
        exact = float(exact_moment(kind, n, x))
        print(f"{kind.value:8s} n={n:2d}  quad={re: .12f}  exact={exact: .12f}  |im|={im:.1e}")

# The Fourier transforms are known in closed form.
ts = np.linspace(0.1, 5.0, 50)
print("characteristic function deviation:", max(charfun_check(k, ts) for k in DensityKind))

# Sampling by inverse CDF with a counter-based generator: same seed, same bits.
cfg = McConfig(samples=10**6, seed=7)
est = mc_moment("logistic", Poly.monomial(4), x, cfg)
print(f"MC B_4(1/3) = {est.mean:.5f} +/- {est.stderr:.5f}  exact {float(exact_moment('logistic', 4, x)):.5f}")
assert est == mc_moment("logistic", Poly.monomial(4), x, cfg)

# Adding an independent uniform variable cancels everything but x^n.
print("cancellation:", cancellation_mc("logistic", 3, F(2), cfg).mean, "vs", 8)

# Averaging over m fractional shifts gives the multiplication theorem.
est = raabe_mc(3, F(1, 5), 3, cfg)
print("Raabe estimate:", est.mean, "+/-", est.stderr, " target:", float(F(1, 27) * bernoulli_poly(3)(F(3, 5))))
