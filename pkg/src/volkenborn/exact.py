"""Exact rational scalars and dense univariate polynomials over Q.

Scalars are :class:`fractions.Fraction`; its ``str`` already matches the
canonical text form used by reports and the CLI ("-691/2730", "3").
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "Poly",
    "binomial",
    "multinomial",
    "poly_shift",
    "poly_eval_complex",
    "parse_rational",
    "format_rational",
]

Rational = Fraction
Scalar = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; rejects floats and zero denominators."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational: {text!r}") from None


def format_rational(q: Scalar) -> str:
    return str(Fraction(q))


def binomial(n: int, k: int) -> int:
    """C(n, k), exact; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / (i_1! ... i_k!) computed as a product of binomials."""
    if any(i < 0 for i in parts):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(parts) != n:
        raise ValueError(f"parts sum to {sum(parts)}, expected {n}")
    out, rest = 1, n
    for i in parts:
        out *= math.comb(rest, i)
        rest -= i
    return out


class Poly:
    """Dense polynomial with Fraction coefficients, lowest degree first.

    Instances are immutable and normalized on construction (trailing zero
    coefficients dropped), so ``==`` is coefficient-wise exact equality. The
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple) -> Poly:
        # caller guarantees Fraction entries and a nonzero leading term
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> Poly:
        return cls([0] * n + [c])

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def parse(cls, text: str) -> Poly:
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"malformed polynomial: {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        return cls(parse_rational(t) for t in body.split(","))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"Poly({self})"

    @staticmethod
    def _coerce(other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c: Scalar) -> Poly:
        if c == 0:
            return Poly()
        c = Fraction(c)
        return Poly._raw(tuple(c * a for a in self.coeffs))

    def __call__(self, x: Scalar) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q: Poly) -> Poly:
        """Return p(q(x))."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def dilate(self, c: Scalar) -> Poly:
        """Return p(c x)."""
        c = Fraction(c)
        return Poly(a * c**i for i, a in enumerate(self.coeffs))

    def shift(self, c: Scalar) -> Poly:
        return poly_shift(self, c)

    def derivative(self) -> Poly:
        return Poly(i * a for i, a in enumerate(self.coeffs) if i)

    def antiderivative(self) -> Poly:
        """Antiderivative with zero constant term."""
        return Poly([0] + [a / (i + 1) for i, a in enumerate(self.coeffs)])

    def divmod(self, d: Poly) -> tuple[Poly, Poly]:
        """Euclidean division over Q."""
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dl = d.coeffs[-1]
        q = [Fraction(0)] * max(len(rem) - len(d.coeffs) + 1, 0)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(d.coeffs) - 1] / dl
            q[i] = c
            if c:
                for j, b in enumerate(d.coeffs):
                    rem[i + j] -= c * b
        return Poly(q), Poly(rem)


def poly_shift(p: Poly, c: Scalar) -> Poly:
    """Return q with q(x) = p(x + c), by repeated synthetic division."""
    c = Fraction(c)
    if c == 0 or len(p.coeffs) < 2:
        return p
    a = list(p.coeffs)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += c * a[j + 1]
    return Poly(a)


def poly_eval_complex(p: Poly, z):
    """Horner evaluation at a complex point (or numpy array of points).

    Coefficients are rounded to float at call time.
    """
    acc = 0j * z if not isinstance(z, (int, float, complex)) else 0j
    for c in reversed(p.coeffs):
        acc = acc * z + float(c)
    return acc
