"""
Checking identities exactly
===========================

Each identity is a pair of polynomial sides. A tuple passes when the
difference is the zero polynomial, with no tolerance involved.
"""
from fractions import Fraction as F

from volkenborn import IDENTITY_IDS, make_grid, verify
from volkenborn.norlund import ParamVec

print(len(IDENTITY_IDS), "identities in the catalogue")

# The multiplication theorem for Bernoulli polynomials of order k.
report = verify("RAABE_B", n_max=8, m_values=(2, 3), a_vectors=[ParamVec([1, 1])])
print(report.summary())

# Side conditions are reported as skips, never silently dropped.
skipped = verify("RAABE_E_ODD", [{"m": 2, "n": 1, "k": 1, "a": ParamVec([1])}])
print(skipped.results[0].skipped)

# Two Euler-number forms fail, and only where k = n. The residual is always -2.
for iid in ("KIM_EULER_NUM", "EULER_SIGN_LEMMA"):
    rep = verify(iid, n_max=6, search=True)
    print(iid, [(r.params["n"], r.params["k"], str(r.residual)) for r in rep.failures()])
    print("  correction found:", rep.correction)

# The even multiplication rule at higher order only balances once the
# left side carries the same parameter vector as the right.
grid = make_grid("EVEN_RAABE_HIGHER", n_max=6, m_values=(2,), a_vectors=[ParamVec([2, F(1, 2)])])
rep = verify("EVEN_RAABE_HIGHER", grid, search=True)
print(rep.summary())

# Reports serialise to JSON lines, CSV or text.
print(verify("KIM1_POLY", n_max=2).to_text())
