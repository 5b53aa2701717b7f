"""Bernoulli and Euler polynomials fixed by their cancellation property.

``B_n`` is the unique monic degree-n polynomial with
``int_0^1 B_n(x + u) du = x^n`` and ``E_n`` the unique monic one with
``(E_n(x) + E_n(x + 1)) / 2 = x^n``. Both averaging maps send ``x^i`` to
``x^i`` plus lower-order terms, so each polynomial comes out of a unit
upper-triangular solve over Q.

Euler numbers follow the convention ``E_n = E_n(0)`` (so ``E_1 = -1/2``);
these are not the secant numbers ``2^n E_n(1/2)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact import Poly, binomial

__all__ = ["bernoulli_poly", "euler_poly", "bernoulli_number", "euler_number"]


@lru_cache(maxsize=None)
def _uniform_average_of_power(i: int) -> tuple[Fraction, ...]:
    # int_0^1 (x+u)^i du = ((x+1)^{i+1} - x^{i+1}) / (i+1)
    return tuple(Fraction(binomial(i + 1, j), i + 1) for j in range(i + 1))


@lru_cache(maxsize=None)
def _two_point_average_of_power(i: int) -> tuple[Fraction, ...]:
    # (x^i + (x+1)^i) / 2
    c = [Fraction(binomial(i, j), 2) for j in range(i + 1)]
    c[i] = Fraction(1)
    return tuple(c)


def _triangular_solve(n: int, column) -> Poly:
    # Solve A c = e_n where column(i)[j] is the x^j coefficient of A(x^i).
    target = [Fraction(0)] * (n + 1)
    target[n] = Fraction(1)
    c = [Fraction(0)] * (n + 1)
    for d in range(n, -1, -1):
        c[d] = target[d]
        if c[d]:
            col = column(d)
            for j in range(d):
                target[j] -= c[d] * col[j]
    return Poly(c)


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """B_n(x), e.g. ``bernoulli_poly(2) == Poly([1/6, -1, 1])``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _triangular_solve(n, _uniform_average_of_power)


@lru_cache(maxsize=None)
def euler_poly(n: int) -> Poly:
    """E_n(x), e.g. ``euler_poly(2) == Poly([0, -1, 1])``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _triangular_solve(n, _two_point_average_of_power)


def bernoulli_number(n: int) -> Fraction:
    return bernoulli_poly(n)[0]


def euler_number(n: int) -> Fraction:
    return euler_poly(n)[0]
