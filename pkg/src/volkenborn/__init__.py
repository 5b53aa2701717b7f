"""Exact Bernoulli, Euler and Nörlund polynomials, identity verification,
and numerical checks of their moment representations."""
from .classical import bernoulli_number, bernoulli_poly, euler_number, euler_poly
from .exact import Poly, binomial, multinomial, poly_eval_complex, poly_shift
from .identities import IDENTITY_IDS, correction_search, make_grid, verify
from .norlund import Kind, ParamVec, norlund_numbers, norlund_poly

__version__ = "0.1.0"
