"""Numerical cross-checks of the moment representations.

``B_n(x) = E (x + i L_B - 1/2)^n`` with ``L_B`` logistic, density
``(pi/2) sech^2(pi t)``, and ``E_n(x) = E (x + i L_E - 1/2)^n`` with ``L_E``
hyperbolic-secant, density ``sech(pi t)``. These are checked three ways:
Gauss-Legendre quadrature, inverse-CDF Monte Carlo, and (for the
underlying Volkenborn integrals) p-adic convergence of truncated sums.

The truncated sums do *not* converge in R; only their p-adic valuations
against the target are meaningful.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.special import gammaincc, gammaln

from .classical import bernoulli_number, bernoulli_poly, euler_number, euler_poly
from .exact import Poly, poly_eval_complex

__all__ = [
    "DensityKind",
    "QuadConfig",
    "McConfig",
    "PadicMode",
    "PadicConfig",
    "McEstimate",
    "density",
    "tail_bound",
    "choose_truncation",
    "quad_moment",
    "charfun_check",
    "charfun_exact",
    "uniform_stream",
    "sample",
    "mc_moment",
    "cancellation_mc",
    "raabe_mc",
    "volkenborn_truncated",
    "valuation",
    "padic_convergence",
    "exact_moment",
]


class DensityKind(enum.Enum):
    LOGISTIC = "logistic"
    SECH = "sech"

    @classmethod
    def coerce(cls, kind) -> "DensityKind":
        if isinstance(kind, cls):
            return kind
        try:
            return cls(str(kind).strip().lower())
        except ValueError:
            raise ValueError(f"unknown density kind: {kind!r}") from None


def density(kind: DensityKind, t):
    # sech(s) = 2 e^{-|s|} / (1 + e^{-2|s|}), finite for every t
    e = np.exp(-np.pi * np.abs(np.asarray(t, dtype=float)))
    sech = 2 * e / (1 + e * e)
    if kind is DensityKind.LOGISTIC:
        return (np.pi / 2) * sech * sech
    return sech


# w(t) <= C exp(-c |t|)
_ENVELOPE = {
    DensityKind.LOGISTIC: (2 * math.pi, 2 * math.pi),
    DensityKind.SECH: (2.0, math.pi),
}


def exact_moment(kind: DensityKind, n: int, x) -> Fraction:
    """The value the moment integral should reproduce: B_n(x) or E_n(x)."""
    kind = DensityKind.coerce(kind)
    p = bernoulli_poly(n) if kind is DensityKind.LOGISTIC else euler_poly(n)
    return p(Fraction(x))


@dataclass(frozen=True)
class QuadConfig:
    """Quadrature settings.

    ``T`` is the truncation half-width (``None``: smallest half-integer
    meeting the tail bound); ``nodes`` is the Gauss-Legendre order used on
    each panel of width at most 1.
    """

    T: Optional[float] = None
    nodes: int = 32
    tol: float = 1e-10

    def __post_init__(self):
        if self.T is not None and not self.T > 0:
            raise ValueError("T must be positive")
        if self.nodes < 1:
            raise ValueError("nodes must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


def _upper_tail(i: int, a: float, c: float, T: float) -> float:
    # int_T^inf (a + t)^i exp(-c t) dt = exp(c a) Gamma(i+1, c(a+T)) / c^(i+1)
    z = c * (a + T)
    q = gammaincc(i + 1, z)
    if q == 0.0:
        return 0.0
    return math.exp(c * a + math.log(q) + gammaln(i + 1) - (i + 1) * math.log(c))


def tail_bound(kind: DensityKind, poly: Poly, x, T: float) -> float:
    """Upper bound on ``int_{|t|>T} w(t) |poly(x + i t - 1/2)| dt``."""
    kind = DensityKind.coerce(kind)
    C, c = _ENVELOPE[kind]
    a = abs(float(Fraction(x)) - 0.5)
    total = 0.0
    for i, coef in enumerate(poly.coeffs):
        if coef:
            total += abs(float(coef)) * _upper_tail(i, a, c, T)
    return 2 * C * total


def choose_truncation(kind: DensityKind, poly: Poly, x, tol: float) -> float:
    T = 0.5
    while tail_bound(kind, poly, x, T) >= tol / 10:
        T += 0.5
    return T


def _panels(T: float, nodes: int):
    count = max(1, math.ceil(2 * T))
    edges = np.linspace(-T, T, count + 1)
    g, w = np.polynomial.legendre.leggauss(nodes)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = (hi - lo) / 2
    t = (lo + hi) / 2 + half * g[None, :]
    return t.ravel(), (half * w[None, :]).ravel()


def _resolve_T(kind, poly, x, cfg: QuadConfig) -> float:
    if cfg.T is None:
        return choose_truncation(kind, poly, x, cfg.tol)
    bound = tail_bound(kind, poly, x, cfg.T)
    if not bound < cfg.tol:
        raise ValueError(f"truncation T={cfg.T} leaves tail bound {bound:.3g} >= tol {cfg.tol:.3g}")
    return cfg.T


def quad_moment(kind, poly: Poly, x, cfg: QuadConfig = QuadConfig()) -> tuple[float, float]:
    """Return ``(re, |im|)`` of ``int poly(x + i t - 1/2) w(t) dt``.

    Raises ValueError when an explicit ``cfg.T`` fails the tail bound.
    """
    kind = DensityKind.coerce(kind)
    T = _resolve_T(kind, poly, x, cfg)
    t, w = _panels(T, cfg.nodes)
    z = float(Fraction(x)) - 0.5 + 1j * t
    vals = poly_eval_complex(poly, z) * (w * density(kind, t))
    return math.fsum(vals.real), abs(math.fsum(vals.imag))


def charfun_exact(kind, t: float) -> float:
    kind = DensityKind.coerce(kind)
    if kind is DensityKind.LOGISTIC:
        return 1.0 if t == 0 else (t / 2) / math.sinh(t / 2)
    return 1.0 / math.cosh(t / 2)


def charfun_check(kind, t_grid: Sequence[float], cfg: QuadConfig = QuadConfig()) -> float:
    """Max deviation of the quadrature characteristic function from its closed form."""
    kind = DensityKind.coerce(kind)
    C, c = _ENVELOPE[kind]
    T = cfg.T
    if T is None:
        T = 0.5
        while 2 * C * math.exp(-c * T) / c >= cfg.tol / 10:
            T += 0.5
    u, w = _panels(T, cfg.nodes)
    weights = w * density(kind, u)
    worst = 0.0
    for t in t_grid:
        approx = math.fsum(np.cos(t * u) * weights)
        worst = max(worst, abs(approx - charfun_exact(kind, t)))
    return worst


# -- Monte Carlo ---------------------------------------------------------------


@dataclass(frozen=True)
class McConfig:
    samples: int = 1_000_000
    seed: int = 0
    block: int = 1 << 16

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("samples must be >= 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.block < 1:
            raise ValueError("block must be positive")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int

    def within(self, target, sigmas: float = 4.0) -> bool:
        # the slack covers float rounding when every sample is identical
        target = float(target)
        slack = 1e-12 * max(1.0, abs(target))
        return abs(self.mean - target) <= sigmas * self.stderr + slack


def uniform_stream(seed: int, stream: int, block: int, size: int) -> np.ndarray:
    """Uniforms on the open interval (0, 1) from a counter-based generator.

    Block ``block`` of stream ``stream`` depends only on ``(seed, stream,
    block)``, so blocks can be drawn in any order or in parallel.
    """
    counter = (stream << 192) | (block << 128)
    bits = np.random.Philox(key=seed, counter=counter).random_raw(size)
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def sample(kind, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF transform of open-interval uniforms."""
    kind = DensityKind.coerce(kind)
    if kind is DensityKind.LOGISTIC:
        return np.arctanh(2 * u - 1) / np.pi
    return np.log(np.tan(np.pi * u / 2)) / np.pi


def _blocks(cfg: McConfig):
    done, b = 0, 0
    while done < cfg.samples:
        size = min(cfg.block, cfg.samples - done)
        yield b, size
        done += size
        b += 1


def _reduce(cfg: McConfig, block_values) -> McEstimate:
    # Chan et al. pairwise merge of (count, mean, M2), in block order
    n, mean, m2 = 0, 0.0, 0.0
    for b, size in _blocks(cfg):
        v = block_values(b, size)
        bn = v.size
        bmean = math.fsum(v) / bn
        bm2 = math.fsum((v - bmean) ** 2)
        tot = n + bn
        delta = bmean - mean
        mean = mean + delta * bn / tot
        m2 = m2 + bm2 + delta * delta * n * bn / tot
        n = tot
    var = m2 / (n - 1)
    return McEstimate(mean, math.sqrt(var / n), n)


def mc_moment(kind, poly: Poly, x, cfg: McConfig = McConfig()) -> McEstimate:
    """Sample mean of ``Re poly(x + i L - 1/2)`` with its standard error."""
    kind = DensityKind.coerce(kind)
    shift = float(Fraction(x)) - 0.5

    def values(b, size):
        t = sample(kind, uniform_stream(cfg.seed, 0, b, size))
        return np.real(poly_eval_complex(poly, shift + 1j * t))

    return _reduce(cfg, values)


def cancellation_mc(kind, n: int, x, cfg: McConfig = McConfig()) -> McEstimate:
    """Estimate ``E (x + i L - 1/2 + U)^n``, which should equal ``x^n``.

    ``U`` is uniform on [0, 1] alongside the logistic law and takes the
    values 0, 1 with probability 1/2 each alongside the secant law.
    """
    kind = DensityKind.coerce(kind)
    shift = float(Fraction(x)) - 0.5
    power = Poly.monomial(n)

    def values(b, size):
        t = sample(kind, uniform_stream(cfg.seed, 0, b, size))
        u = uniform_stream(cfg.seed, 1, b, size)
        if kind is DensityKind.SECH:
            u = (u < 0.5).astype(np.float64)
        return np.real(poly_eval_complex(power, shift + u + 1j * t))

    return _reduce(cfg, values)


def raabe_mc(n: int, x, m: int, cfg: McConfig = McConfig()) -> McEstimate:
    """Estimate ``E (x + i L_B - 1/2 + V/m)^n`` with V uniform on {0..m-1}.

    Target: ``m^(-n) B_n(m x)``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    shift = float(Fraction(x)) - 0.5
    power = Poly.monomial(n)

    def values(b, size):
        t = sample(DensityKind.LOGISTIC, uniform_stream(cfg.seed, 0, b, size))
        v = np.floor(uniform_stream(cfg.seed, 1, b, size) * m)
        return np.real(poly_eval_complex(power, shift + v / m + 1j * t))

    return _reduce(cfg, values)


# -- p-adic --------------------------------------------------------------------


class PadicMode(enum.Enum):
    ZERO = "zero"
    FERMIONIC = "fermionic"

    @classmethod
    def coerce(cls, mode) -> "PadicMode":
        if isinstance(mode, cls):
            return mode
        try:
            return cls(str(mode).strip().lower())
        except ValueError:
            raise ValueError(f"unknown p-adic mode: {mode!r}") from None


@dataclass(frozen=True)
class PadicConfig:
    p: int
    n: int
    N_max: int
    mode: PadicMode = PadicMode.ZERO

    def __post_init__(self):
        object.__setattr__(self, "mode", PadicMode.coerce(self.mode))
        if self.p < 2:
            raise ValueError("p must be >= 2")
        if self.n < 0 or self.N_max < 0:
            raise ValueError("n and N_max must be >= 0")
        if self.mode is PadicMode.FERMIONIC and self.p % 2 == 0:
            raise ValueError("fermionic mode requires an odd prime")

    @property
    def target(self) -> Fraction:
        if self.mode is PadicMode.ZERO:
            return bernoulli_number(self.n)
        return euler_number(self.n)


def volkenborn_truncated(cfg: PadicConfig, N: int) -> Fraction:
    """Truncated Volkenborn sum of ``x^n`` over ``0 <= x < p^N``.

    ZERO: ``p^-N sum x^n``. FERMIONIC: ``sum (-1)^x x^n`` (the normalizing
    factor is 1 because ``p^N`` is odd).
    """
    if not 0 <= N <= cfg.N_max:
        raise ValueError(f"N must lie in [0, {cfg.N_max}]")
    M, n = cfg.p**N, cfg.n
    if cfg.mode is PadicMode.ZERO:
        return Fraction(sum(x**n for x in range(M)), M)
    return Fraction(sum(x**n for x in range(0, M, 2)) - sum(x**n for x in range(1, M, 2)))


def valuation(q, p: int):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    q = Fraction(q)
    if q == 0:
        return math.inf

    def v(m: int) -> int:
        m, e = abs(m), 0
        while m % p == 0:
            m //= p
            e += 1
        return e

    return v(q.numerator) - v(q.denominator)


def padic_convergence(cfg: PadicConfig) -> list[tuple[int, float]]:
    """``[(N, v_p(S_N - target)) for N = 1..N_max]``."""
    target = cfg.target
    return [(N, valuation(volkenborn_truncated(cfg, N) - target, cfg.p)) for N in range(1, cfg.N_max + 1)]
