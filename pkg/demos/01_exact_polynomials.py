"""
Bernoulli, Euler and Nörlund polynomials in exact arithmetic
=============================================================

Everything here is a Fraction. Nothing is rounded until we choose to print
a float.
"""
from fractions import Fraction as F

from volkenborn import bernoulli_number, bernoulli_poly, euler_number, euler_poly, norlund_poly
from volkenborn.exact import Poly

# Bernoulli polynomials are pinned down by one averaging rule:
# the mean of B_n over [x, x+1] is x^n.
for n in range(6):
    print(f"B_{n}(x) = {bernoulli_poly(n)}")

b4 = bernoulli_poly(4)
P = b4.antiderivative()
print("average of B_4 over [x, x+1]:", P.shift(1) - P)

# Euler polynomials use a two-point average instead.
e3 = euler_poly(3)
print("E_3 =", e3, " (E_3(x) + E_3(x+1))/2 =", (e3 + e3.shift(1)).scale(F(1, 2)))

# The numbers are the values at zero.
print("B_12 =", bernoulli_number(12), " E_5 =", euler_number(5))

# Higher order: a parameter vector a = (a_1, ..., a_k) convolves k scaled copies.
a = (2, F(-1, 3))
for n in range(4):
    print(f"B_{n}^(2)(x | 2, -1/3) =", norlund_poly("b", a, n))

# Odd-index Nörlund polynomials vanish at half the parameter sum.
mid = sum(F(v) for v in a) / 2
print("B_5^(2)(mid | a) =", norlund_poly("b", a, 5)(mid))

# Poly values print in a canonical form that parses back.
assert Poly.parse(str(b4)) == b4
