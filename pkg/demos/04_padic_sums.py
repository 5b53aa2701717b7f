"""
Truncated Volkenborn sums
=========================

S_N = p^-N * sum_{x < p^N} x^n tends to B_n p-adically, not in the reals.
The alternating version tends to E_n for odd p.
"""
from volkenborn.stochastic import PadicConfig, padic_convergence, volkenborn_truncated

cfg = PadicConfig(p=3, n=2, N_max=6)
for N in range(1, 7):
    s = volkenborn_truncated(cfg, N)
    print(f"N={N}  S_N={float(s):14.3f}  v_3(S_N - B_2)={padic_convergence(cfg)[N - 1][1]}")

# The real values blow up while the 3-adic distance to B_2 shrinks.
for p, mode in ((2, "zero"), (5, "fermionic")):
    cfg = PadicConfig(p, 3, 6, mode)
    print(p, mode, [v for _, v in padic_convergence(cfg)])
