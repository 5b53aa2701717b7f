"""Higher-order (Nörlund) Bernoulli and Euler polynomials.

The order-k Bernoulli polynomial with parameters ``a = (a_1, ..., a_k)`` has
exponential generating function ``e^{xt} prod_j a_j t / (e^{a_j t} - 1)``;
the Euler analogue uses ``prod_j 2 / (e^{a_j t} + 1)``. Products of EGFs are
binomial convolutions of coefficient sequences, so the numbers are built by
convolving the scaled first-order sequences ``a_j^m B_m`` (or ``a_j^m E_m``).

Order zero is the empty product: ``B_n^(0)(x) = E_n^(0)(x) = x^n``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .classical import bernoulli_number, euler_number
from .exact import Poly, binomial, parse_rational

__all__ = [
    "Kind",
    "ParamVec",
    "NorlundTable",
    "norlund_numbers",
    "norlund_poly",
    "norlund_value",
]


class Kind(enum.Enum):
    BERNOULLI = "b"
    EULER = "e"

    @classmethod
    def coerce(cls, kind: Union["Kind", str]) -> "Kind":
        if isinstance(kind, cls):
            return kind
        key = str(kind).strip().lower()
        for k in cls:
            if key in (k.value, k.name.lower()):
                return k
        raise ValueError(f"unknown kind: {kind!r}")


class ParamVec(tuple):
    """Ordered tuple of nonzero Fractions; text form ``"2,-1/3"``."""

    def __new__(cls, entries: Iterable = ()):
        vals = tuple(Fraction(e) for e in entries)
        if any(v == 0 for v in vals):
            raise ValueError("Nörlund parameters must be nonzero")
        return super().__new__(cls, vals)

    @classmethod
    def parse(cls, text: str) -> "ParamVec":
        s = text.strip()
        if not s:
            return cls()
        return cls(parse_rational(t) for t in s.split(","))

    @classmethod
    def ones(cls, k: int) -> "ParamVec":
        return cls([1] * k)

    @property
    def order(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self)

    def __repr__(self) -> str:
        return f"ParamVec({str(self)!r})"


@dataclass(frozen=True)
class NorlundTable:
    kind: Kind
    params: ParamVec
    numbers: tuple[Fraction, ...]

    @property
    def n_max(self) -> int:
        return len(self.numbers) - 1


def _convolve(u, v):
    n = len(u)
    return [sum(binomial(m, i) * u[i] * v[m - i] for i in range(m + 1)) for m in range(n)]


def _numbers(kind: Kind, a: tuple, n_max: int) -> tuple[Fraction, ...]:
    # round up so that requests for successive n share one table
    size = -(-(n_max + 1) // 16) * 16
    return _numbers_block(kind, a, size - 1)[: n_max + 1]


@lru_cache(maxsize=None)
def _numbers_block(kind: Kind, a: tuple, n_max: int) -> tuple[Fraction, ...]:
    base = bernoulli_number if kind is Kind.BERNOULLI else euler_number
    seq = [Fraction(1)] + [Fraction(0)] * n_max
    for aj in a:
        seq = _convolve(seq, [aj**m * base(m) for m in range(n_max + 1)])
    return tuple(seq)


def norlund_numbers(kind, a, n_max: int) -> NorlundTable:
    """Table of ``B_n^(k)(a)`` (or ``E_n^(k)(0|a)``) for ``n = 0..n_max``."""
    kind = Kind.coerce(kind)
    a = a if isinstance(a, ParamVec) else ParamVec(a)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return NorlundTable(kind, a, _numbers(kind, tuple(a), n_max))


@lru_cache(maxsize=None)
def _poly(kind: Kind, a: tuple, n: int) -> Poly:
    nums = _numbers(kind, a, n)
    return Poly(binomial(n, l) * nums[n - l] for l in range(n + 1))


def norlund_poly(kind, a, n: int) -> Poly:
    """``B_n^(k)(x|a)`` or ``E_n^(k)(x|a)`` as an exact monic Poly."""
    kind = Kind.coerce(kind)
    a = a if isinstance(a, ParamVec) else ParamVec(a)
    if n < 0:
        raise ValueError("n must be >= 0")
    return _poly(kind, tuple(a), n)


def norlund_value(kind, a, n: int, x=0) -> Fraction:
    return norlund_poly(kind, a, n)(Fraction(x))
