"""Executable catalog of Bernoulli/Euler/Nörlund identities.

Every identity expands its two sides to exact :class:`Poly` values (number
identities give constant polynomials) and is judged by its residual
``lhs - rhs``: the zero polynomial passes, anything else is reported as data.
Polynomial identities are checked as identities in ``x``, never at samples.

Conventions: ``delta(k)`` is 1 iff ``k == 0``; order-zero Nörlund
polynomials are plain powers ``x^n``; ``E^(p)`` without parameters means the
all-ones parameter vector.
"""
from __future__ import annotations

import csv
import io
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .classical import bernoulli_number, bernoulli_poly, euler_number, euler_poly
from .exact import Poly, binomial, multinomial
from .norlund import Kind, ParamVec, norlund_numbers, norlund_poly

__all__ = [
    "IDENTITY_IDS",
    "Identity",
    "TupleResult",
    "IdentityReport",
    "get_identity",
    "make_grid",
    "verify",
    "correction_search",
    "beta_poly",
    "bernstein_poly",
    "default_param_vectors",
]

X = Poly.x()
Sides = tuple  # (lhs: Poly, rhs: Poly)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _delta(k: int) -> int:
    return 1 if k == 0 else 0


def _const(c) -> Poly:
    return Poly.const(c)


def beta_poly(k: int, n: int) -> Poly:
    """x^k (1+x)^(n-k)."""
    if not 0 <= k <= n:
        raise ValueError("beta_poly requires 0 <= k <= n")
    return X**k * Poly([1, 1]) ** (n - k)


def bernstein_poly(k: int, n: int) -> Poly:
    """C(n,k) x^k (1-x)^(n-k)."""
    if not 0 <= k <= n:
        raise ValueError("bernstein_poly requires 0 <= k <= n")
    return (X**k * Poly([1, -1]) ** (n - k)).scale(binomial(n, k))


def _B(p: int, n: int) -> Poly:
    return norlund_poly(Kind.BERNOULLI, ParamVec.ones(p), n)


def _E(p: int, n: int) -> Poly:
    return norlund_poly(Kind.EULER, ParamVec.ones(p), n)


def _lattice_weights(a: Sequence[Fraction], m: int, alternating: bool) -> dict:
    # {sum_i a_i l_i / m : total weight} over l in {0..m-1}^k
    out: dict = {}
    for ls in itertools.product(range(m), repeat=len(a)):
        c = sum((ai * li for ai, li in zip(a, ls)), Fraction(0)) / m
        w = _sign(sum(ls)) if alternating else 1
        out[c] = out.get(c, 0) + w
    return out


def _lattice_sum(p: Poly, a, m: int, alternating: bool) -> Poly:
    acc = Poly()
    for c, w in _lattice_weights(a, m, alternating).items():
        if w:
            acc = acc + p.shift(c).scale(w)
    return acc


def _compositions(n: int, k: int):
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for i in range(n + 1):
        for rest in _compositions(n - i, k - 1):
            yield (i,) + rest


# -- first-order Bernoulli ----------------------------------------------------


def _bern_num_3case(n, k):
    lhs = sum((binomial(n - k, j) * bernoulli_number(j + k) for j in range(n - k + 1)), Fraction(0))
    rhs = sum((binomial(k, j) * _sign(j) * bernoulli_number(n - j) for j in range(k + 1)), Fraction(0))
    if k == n - 1:
        rhs += _sign(n - 1)
    elif k == n:
        rhs += n * _sign(n - 1)
    return _const(lhs), _const(rhs)


def _check_n_k(n, k):
    if not 0 <= k <= n:
        return "requires 0 <= k <= n"
    return None


def _kim1_extra_term(n: int, k: int) -> Poly:
    # (n x - (n-k)) x^(n-k-1) (x-1)^(k-1); exponents may be -1, resolved by exact division
    num = Poly([-(n - k), n]) * X ** max(n - k - 1, 0) * Poly([-1, 1]) ** max(k - 1, 0)
    for exponent, factor in ((n - k - 1, X), (k - 1, Poly([-1, 1]))):
        if exponent < 0:
            num, r = num.divmod(factor)
            if r:
                raise ArithmeticError(f"extra term is not a polynomial at n={n}, k={k}")
    return num


def _kim1_poly(n, k):
    lhs = sum((bernoulli_poly(j + k).scale(binomial(n - k, j)) for j in range(n - k + 1)), Poly())
    rhs = sum((bernoulli_poly(n - j).scale(binomial(k, j) * _sign(j)) for j in range(k + 1)), Poly())
    return lhs, rhs + _kim1_extra_term(n, k)


def _cancellation_b(n):
    lhs = sum((bernoulli_poly(j).scale(binomial(n, j)) for j in range(n + 1)), Poly()) - bernoulli_poly(n)
    return lhs, Poly.monomial(n - 1, n) if n else Poly()


def _cancellation_e(n):
    e = euler_poly(n)
    return (e + e.shift(1)).scale(Fraction(1, 2)), Poly.monomial(n)


def _binomial_base(n, k):
    lhs = sum((Poly.monomial(j + k, binomial(n - k, j)) for j in range(n - k + 1)), Poly())
    one_plus = Poly([1, 1])
    rhs = sum(((one_plus ** (n - j)).scale(binomial(k, j) * _sign(j)) for j in range(k + 1)), Poly())
    return lhs, rhs


# -- Euler --------------------------------------------------------------------


def _kim_euler_num(n, k):
    lhs = sum((binomial(n - k, j) * _sign(j) * euler_number(j + k) for j in range(n - k + 1)), Fraction(0))
    rhs = sum((binomial(k, j) * _sign(k - j) * euler_number(n - j) for j in range(k + 1)), Fraction(0))
    return _const(lhs), _const(rhs + 2 * _delta(k))


def _kim_poly_euler(n, k):
    lhs = sum((euler_poly(j + k).scale(binomial(n - k, j) * _sign(j)) for j in range(n - k + 1)), Poly())
    s = sum((euler_poly(n - j).scale(binomial(k, j)) for j in range(k + 1)), Poly())
    tail = (X**k * Poly([1, -1]) ** (n - k)).scale(2)
    return lhs, s.scale(_sign(n + k + 1)) + tail


def _with_diagonal_term(sides):
    # adds -2 delta_(n-k) to the right-hand side
    def corrected(n, k):
        lhs, rhs = sides(n, k)
        return lhs, rhs - 2 * _delta(n - k)

    return corrected


def _euler_sign_lemma(n, k):
    s = sum((binomial(k, j) * euler_number(n - j) for j in range(k + 1)), Fraction(0))
    rhs = sum((binomial(k, j) * _sign(k - j) * euler_number(n - j) for j in range(k + 1)), Fraction(0))
    return _const(_sign(n + k + 1) * s), _const(rhs)


# -- Nörlund ------------------------------------------------------------------


def _prop42(n, a):
    a = Fraction(a)
    lhs = norlund_poly(Kind.BERNOULLI, ParamVec([a]), n)
    return lhs, bernoulli_poly(n).dilate(1 / a).scale(a**n)


def _check_scalar(n, a):
    return "parameter must be nonzero" if Fraction(a) == 0 else None


def _prop43(n, k, a, y):
    y = Fraction(y)
    lhs = sum(
        (Poly.monomial(l, binomial(n, l) * norlund_poly(Kind.BERNOULLI, a, n - l)(y)) for l in range(n + 1)),
        Poly(),
    )
    return lhs, norlund_poly(Kind.BERNOULLI, a, n).shift(y)


def _check_order(k, a, **_):
    if k != len(a):
        return "k must equal the length of a"
    return None


def _prop44(n, k, a):
    mid = sum(a, Fraction(0)) / 2
    return _const(norlund_poly(Kind.BERNOULLI, a, 2 * n + 1)(mid)), Poly()


def _first_order(i: int, aj) -> Poly:
    return norlund_poly(Kind.BERNOULLI, ParamVec([aj]), i)


def _multinomial_b_poly(n, k, a, xs=None):
    if xs is None:
        lhs = norlund_poly(Kind.BERNOULLI, a, n)
        rhs = Poly()
        for parts in _compositions(n, k):
            term = _first_order(parts[0], a[0]).scale(multinomial(n, parts))
            for i, aj in zip(parts[1:], a[1:]):
                term = term.scale(_first_order(i, aj)(0))
            rhs = rhs + term
        return lhs, rhs
    xs = [Fraction(v) for v in xs]
    lhs = norlund_poly(Kind.BERNOULLI, a, n)(sum(xs, Fraction(0)))
    rhs = Fraction(0)
    for parts in _compositions(n, k):
        term = Fraction(multinomial(n, parts))
        for i, aj, xj in zip(parts, a, xs):
            term *= _first_order(i, aj)(xj)
        rhs += term
    return _const(lhs), _const(rhs)


def _check_multinomial_poly(k, a, xs=None, **_):
    if k != len(a):
        return "k must equal the length of a"
    if k < 1:
        return "requires k >= 1"
    if xs is not None and len(xs) != k:
        return "xs must have k entries"
    return None


def _multinomial_b_num(n, k, a):
    lhs = norlund_numbers(Kind.BERNOULLI, a, n).numbers[n]
    rhs = Fraction(0)
    for parts in _compositions(n, k):
        term = Fraction(multinomial(n, parts))
        for i, aj in zip(parts, a):
            term *= aj**i * bernoulli_number(i)
        rhs += term
    return _const(lhs), _const(rhs)


def _norlund_kim(p, n, k):
    lhs = sum((_B(p, j + k).scale(binomial(n - k, j)) for j in range(n - k + 1)), Poly())
    rhs = Poly()
    for j in range(k + 1):
        term = _B(p, n - j)
        if n - j > 0:
            term = term + _B(p - 1, n - j - 1).scale(n - j)
        rhs = rhs + term.scale(binomial(k, j) * _sign(j))
    return lhs, rhs


def _multidim_euler_kim(p, n, k):
    lhs = sum((_E(p, j + k).scale(binomial(n - k, j) * _sign(j)) for j in range(n - k + 1)), Poly())
    s1 = sum((_E(p, n - j).scale(binomial(k, j)) for j in range(k + 1)), Poly())
    s2 = sum((_E(p - 1, n - j).shift(-1).scale(binomial(k, j)) for j in range(k + 1)), Poly())
    return lhs, s1.scale(_sign(n + k + 1)) + s2.scale(2 * _sign(n + k))


def _check_p_n_k(p, n, k):
    if p < 1:
        return "requires p >= 1"
    return _check_n_k(n, k)


# -- multiplication theorems --------------------------------------------------


def _raabe_b(m, n, k, a):
    p = norlund_poly(Kind.BERNOULLI, a, n)
    lhs = p.dilate(m).scale(Fraction(m) ** (k - n))
    return lhs, _lattice_sum(p, a, m, alternating=False)


def _raabe_e_odd(m, n, k, a):
    p = norlund_poly(Kind.EULER, a, n)
    lhs = p.dilate(m).scale(Fraction(m) ** (-n))
    return lhs, _lattice_sum(p, a, m, alternating=True)


def _nielsen_even(m, n):
    lhs = euler_poly(n).dilate(m).scale(Fraction(m) ** (-n))
    rhs = _lattice_sum(bernoulli_poly(n + 1), [Fraction(1)], m, alternating=True)
    return lhs, rhs.scale(Fraction(-2, n + 1))


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _even_raabe_higher(m, n, k, a, parameterized=False):
    coef = Fraction(m) ** (k - n) * Fraction(-1, 2) ** k * _falling(n, k)
    for ai in a:
        coef *= ai
    if coef:
        e = norlund_poly(Kind.EULER, a if parameterized else ParamVec.ones(k), n - k)
        lhs = e.dilate(m).scale(coef)
    else:
        lhs = Poly()
    rhs = _lattice_sum(norlund_poly(Kind.BERNOULLI, a, n), a, m, alternating=True)
    return lhs, rhs


def _check_m(parity: Optional[int]):
    def check(m, k=None, a=None, **_):
        if m < 1:
            return "requires m >= 1"
        if parity is not None and m % 2 != parity:
            return "requires m odd" if parity else "requires m even"
        if a is not None and k != len(a):
            return "k must equal the length of a"
        return None

    return check


# -- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    """One identity: its parameter names, side expansion and side conditions.

    ``variants`` maps a correction descriptor to an alternative ``sides``
    function, used by :func:`correction_search`.
    """

    id: str
    keys: tuple
    sides: Callable[..., Sides]
    check: Callable[..., Optional[str]] = lambda **_: None
    variants: Mapping[str, Callable[..., Sides]] = field(default_factory=dict)
    source: str = ""

    def evaluate(self, params: Mapping) -> Sides:
        return self.sides(**params)

    def reject_reason(self, params: Mapping) -> Optional[str]:
        missing = [k for k in self.keys if k not in params]
        if missing:
            return "missing parameters: " + ",".join(missing)
        try:
            return self.check(**params)
        except (TypeError, ValueError) as exc:
            return str(exc)


_REGISTRY = {
    ident.id: ident
    for ident in [
        Identity("BERN_NUM_3CASE", ("n", "k"), _bern_num_3case, _check_n_k,
                 source="three-case theorem on Bernoulli numbers"),
        Identity("KIM1_POLY", ("n", "k"), _kim1_poly, _check_n_k,
                 source="Bernoulli polynomial analogue of Kim's identity"),
        Identity("KIM_EULER_NUM", ("n", "k"), _kim_euler_num, _check_n_k,
                 variants={"extra -2*delta(n-k) term": _with_diagonal_term(_kim_euler_num)},
                 source="Kim's identity on Euler numbers"),
        Identity("KIM_POLY_EULER", ("n", "k"), _kim_poly_euler, _check_n_k,
                 source="polynomial extension of Kim's identity"),
        Identity("EULER_SIGN_LEMMA", ("n", "k"), _euler_sign_lemma, _check_n_k,
                 variants={"extra -2*delta(n-k) term": _with_diagonal_term(_euler_sign_lemma)},
                 source="sign lemma linking the two forms of Kim's identity"),
        Identity("BINOMIAL_BASE", ("n", "k"), _binomial_base, _check_n_k,
                 source="formal identity X^k (1+X)^(n-k) expanded two ways"),
        Identity("CANCELLATION_B", ("n",), _cancellation_b,
                 lambda n: None if n >= 0 else "requires n >= 0",
                 source="cancellation rule, Bernoulli form"),
        Identity("CANCELLATION_E", ("n",), _cancellation_e,
                 lambda n: None if n >= 0 else "requires n >= 0",
                 source="cancellation rule, Euler form"),
        Identity("PROP42", ("n", "a"), _prop42, _check_scalar,
                 source="order-one scaling B_n^(1)(x|a) = a^n B_n(x/a)"),
        Identity("PROP43", ("n", "k", "a", "y"), _prop43, _check_order,
                 source="binomial shift in x"),
        Identity("PROP44", ("n", "k", "a"), _prop44, _check_order,
                 source="odd-index vanishing at the parameter midpoint"),
        Identity("MULTINOMIAL_B_POLY", ("n", "k", "a"), _multinomial_b_poly, _check_multinomial_poly,
                 source="multinomial expansion, polynomials"),
        Identity("MULTINOMIAL_B_NUM", ("n", "k", "a"), _multinomial_b_num, _check_order,
                 source="multinomial expansion, numbers"),
        Identity("NORLUND_KIM", ("p", "n", "k"), _norlund_kim, _check_p_n_k,
                 source="Kim's identity for Nörlund polynomials"),
        Identity("MULTIDIM_EULER_KIM", ("p", "n", "k"), _multidim_euler_kim, _check_p_n_k,
                 source="Kim's identity for multidimensional Euler polynomials"),
        Identity("RAABE_B", ("m", "n", "k", "a"), _raabe_b, _check_m(None),
                 source="Raabe multiplication theorem, order k"),
        Identity("RAABE_E_ODD", ("m", "n", "k", "a"), _raabe_e_odd, _check_m(1),
                 source="Raabe multiplication theorem for Euler, m odd"),
        Identity("NIELSEN_EVEN", ("m", "n"), _nielsen_even, _check_m(0),
                 source="Nielsen multiplication theorem, m even"),
        Identity("EVEN_RAABE_HIGHER", ("m", "n", "k", "a"), _even_raabe_higher, _check_m(0),
                 variants={"parameterized E on LHS": lambda **kw: _even_raabe_higher(**kw, parameterized=True)},
                 source="alternating multiplication theorem, order k, m even"),
    ]
}

IDENTITY_IDS = tuple(_REGISTRY)


def get_identity(identity: Union[str, Identity]) -> Identity:
    if isinstance(identity, Identity):
        return identity
    key = str(identity).strip().upper().replace("-", "_")
    try:
        return _REGISTRY[key]
    except KeyError:
        raise ValueError(f"unknown identity id: {identity!r}") from None


# -- grids --------------------------------------------------------------------

MIXED_PARAMS = (Fraction(2), Fraction(-1, 3), Fraction(3, 2), Fraction(-2, 3))
PROP42_SCALARS = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3, 2), Fraction(-2, 3))
PROP43_SHIFTS = (Fraction(0), Fraction(1), Fraction(-1, 2))


def _cycle(base: Sequence[Fraction], k: int) -> ParamVec:
    return ParamVec(base[i % len(base)] for i in range(k))


def default_param_vectors(k_max: int, base: Optional[Sequence] = None, k_min: int = 0) -> list[ParamVec]:
    """Parameter vectors of orders k_min..k_max.

    With ``base`` given, order k uses ``base`` repeated cyclically to length
    k. Otherwise both the all-ones vector and a mixed-sign rational vector are
    returned for each order.
    """
    if base is not None:
        base = ParamVec(base)
        if not base and k_max > 0:
            raise ValueError("empty base parameter vector")
        return [_cycle(base, k) for k in range(k_min, k_max + 1)]
    out = [ParamVec.ones(k) for k in range(k_min, k_max + 1)]
    out += [_cycle(MIXED_PARAMS, k) for k in range(max(k_min, 1), k_max + 1)]
    return out


def random_param_vectors(count: int, k_max: int, seed: int = 0) -> list[ParamVec]:
    """Random nonzero rational vectors with 1 <= k <= k_max, reproducible by seed."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, k_max)
        entries = []
        while len(entries) < k:
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
            if q:
                entries.append(q)
        out.append(ParamVec(entries))
    return out


def make_grid(
    identity,
    *,
    n_max: int = 10,
    k_max: Optional[int] = None,
    p_values: Sequence[int] = (1, 2, 3),
    m_values: Optional[Sequence[int]] = None,
    a_vectors: Optional[Sequence] = None,
    scalars: Sequence = PROP42_SCALARS,
    y_values: Sequence = PROP43_SHIFTS,
    points: int = 0,
    seed: int = 0,
) -> list[dict]:
    """Parameter tuples for ``identity`` in lexicographic order of its keys.

    ``k_max`` caps k in the (n, k) identities and is the maximal order for
    the Nörlund identities (default 3). ``points`` adds that many random
    rational evaluation points per (a, n) to MULTINOMIAL_B_POLY.
    """
    ident = get_identity(identity)
    iid = ident.id
    order_max = 3 if k_max is None else k_max
    if a_vectors is None:
        k_min = 1 if iid.startswith("MULTINOMIAL") else 0
        a_vectors = default_param_vectors(order_max, k_min=k_min)
    a_vectors = [v if isinstance(v, ParamVec) else ParamVec(v) for v in a_vectors]

    grid: list[dict] = []
    if ident.keys == ("n", "k"):
        for n in range(n_max + 1):
            for k in range(min(n, n_max if k_max is None else k_max) + 1):
                grid.append({"n": n, "k": k})
    elif ident.keys == ("n",):
        grid = [{"n": n} for n in range(n_max + 1)]
    elif iid == "PROP42":
        grid = [{"n": n, "a": Fraction(a)} for a in scalars for n in range(n_max + 1)]
    elif iid == "PROP43":
        grid = [
            {"n": n, "k": len(a), "a": a, "y": Fraction(y)}
            for a in a_vectors for y in y_values for n in range(n_max + 1)
        ]
    elif iid in ("PROP44", "MULTINOMIAL_B_NUM"):
        grid = [{"n": n, "k": len(a), "a": a} for a in a_vectors for n in range(n_max + 1)]
    elif iid == "MULTINOMIAL_B_POLY":
        rng = random.Random(seed)
        for a in a_vectors:
            for n in range(n_max + 1):
                grid.append({"n": n, "k": len(a), "a": a})
                for _ in range(points):
                    xs = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in a)
                    grid.append({"n": n, "k": len(a), "a": a, "xs": xs})
    elif ident.keys == ("p", "n", "k"):
        for p in p_values:
            for n in range(n_max + 1):
                for k in range(min(n, n_max if k_max is None else k_max) + 1):
                    grid.append({"p": p, "n": n, "k": k})
    elif iid == "NIELSEN_EVEN":
        grid = [{"m": m, "n": n} for m in (m_values or (2, 4)) for n in range(n_max + 1)]
    elif ident.keys == ("m", "n", "k", "a"):
        default_m = {"RAABE_B": (1, 2, 3, 5), "RAABE_E_ODD": (1, 3, 5)}.get(iid, (2, 4))
        grid = [
            {"m": m, "n": n, "k": len(a), "a": a}
            for a in a_vectors for m in (m_values or default_m) for n in range(n_max + 1)
        ]
    else:
        raise ValueError(f"no grid builder for {iid}")
    return grid


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class TupleResult:
    params: dict
    residual: Optional[Poly]
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.skipped is None and self.residual is not None and self.residual.is_zero()


def _param_text(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, ParamVec):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, list)):
        return ",".join(str(Fraction(e)) for e in v)
    return str(v)


@dataclass
class IdentityReport:
    id: str
    results: list
    correction: Optional[str] = None

    @property
    def pass_count(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def fail_count(self) -> int:
        return sum(1 for r in self.results if r.skipped is None and not r.passed)

    @property
    def skip_count(self) -> int:
        return sum(1 for r in self.results if r.skipped is not None)

    @property
    def max_residual_degree(self) -> int:
        """Largest degree among nonzero residuals; -1 when every tuple passes."""
        degs = [r.residual.degree for r in self.results if r.residual is not None and not r.passed]
        return max(degs, default=-1)

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def failures(self) -> list:
        return [r for r in self.results if r.skipped is None and not r.passed]

    def records(self) -> list[dict]:
        out = []
        for r in self.results:
            rec = {
                "id": self.id,
                "params": {k: _param_text(v) for k, v in r.params.items()},
                "residual": None if r.residual is None else str(r.residual),
                "pass": r.passed,
            }
            if r.skipped is not None:
                rec["skipped"] = r.skipped
            out.append(rec)
        return out

    def summary(self) -> dict:
        return {
            "id": self.id,
            "summary": {
                "pass": self.pass_count,
                "fail": self.fail_count,
                "skipped": self.skip_count,
                "max_residual_degree": self.max_residual_degree,
                "correction": self.correction,
            },
        }

    def to_json_lines(self) -> str:
        import json

        lines = [json.dumps(r, separators=(",", ":")) for r in self.records()]
        lines.append(json.dumps(self.summary(), separators=(",", ":")))
        return "\n".join(lines) + "\n"

    CSV_COLUMNS = ("id", "params", "residual", "pass", "skipped")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_COLUMNS)
        for rec in self.records():
            params = ";".join(f"{k}={v}" for k, v in rec["params"].items())
            w.writerow([rec["id"], params, rec["residual"] or "", str(rec["pass"]).lower(), rec.get("skipped", "")])
        s = self.summary()["summary"]
        w.writerow(["summary", f"pass={s['pass']};fail={s['fail']};skipped={s['skipped']}",
                    s["max_residual_degree"], str(self.ok).lower(), s["correction"] or ""])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for rec in self.records():
            params = " ".join(f"{k}={v}" for k, v in rec["params"].items())
            status = "SKIP " + rec["skipped"] if "skipped" in rec else ("PASS" if rec["pass"] else "FAIL " + rec["residual"])
            lines.append(f"{self.id} {params} {status}")
        s = self.summary()["summary"]
        tail = f"{self.id}: {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped"
        if self.correction:
            tail += f"; correction: {self.correction}"
        lines.append(tail)
        return "\n".join(lines) + "\n"


def _residual(ident: Identity, params: Mapping) -> Poly:
    lhs, rhs = ident.evaluate(params)
    return lhs - rhs


def verify(identity, grid: Optional[Iterable[Mapping]] = None, *, search: bool = False, **grid_opts) -> IdentityReport:
    """Evaluate ``identity`` on every tuple of ``grid`` and collect residuals.

    Tuples violating a side condition are kept in the report as skipped.
    With ``search=True`` a failing report also carries the outcome of
    :func:`correction_search`.
    """
    ident = get_identity(identity)
    if grid is None:
        grid = make_grid(ident, **grid_opts)
    results = []
    for params in grid:
        params = dict(params)
        reason = ident.reject_reason(params)
        if reason is not None:
            results.append(TupleResult(params, None, reason))
        else:
            results.append(TupleResult(params, _residual(ident, params)))
    report = IdentityReport(ident.id, results)
    if search and report.fail_count:
        report.correction = correction_search(ident, [r.params for r in results if r.skipped is None])
    return report


def _sign_candidate(exponent: Callable[[Mapping], Optional[int]]):
    def residual(ident: Identity, params: Mapping) -> Optional[Poly]:
        e = exponent(params)
        if e is None:
            return None
        lhs, rhs = ident.evaluate(params)
        return lhs - rhs.scale(_sign(e))

    return residual


def _get(*names):
    def f(params):
        if any(n not in params for n in names):
            return None
        return sum(params[n] for n in names)

    return f


SIGN_CORRECTIONS = (
    ("global sign", _sign_candidate(lambda params: 1)),
    ("(-1)^n factor", _sign_candidate(_get("n"))),
    ("(-1)^k factor", _sign_candidate(_get("k"))),
    ("(-1)^(n+k) factor", _sign_candidate(_get("n", "k"))),
)


def correction_search(identity, grid: Iterable[Mapping]) -> str:
    """Look for a single correction that zeroes the residual on all of ``grid``.

    Candidates are a global sign, extra sign factors (-1)^n, (-1)^k,
    (-1)^(n+k) on the right-hand side, and any variant forms registered on
    the identity (a parameterized Euler factor for EVEN_RAABE_HIGHER, a
    missing diagonal Kronecker term for the Euler-number forms of Kim's
    identity). Returns ``"not applicable"`` when the identity already
    holds, the descriptor of the first successful candidate, or
    ``"none found"``.
    """
    ident = get_identity(identity)
    grid = [dict(p) for p in grid if ident.reject_reason(dict(p)) is None]
    if all(_residual(ident, p).is_zero() for p in grid):
        return "not applicable"
    candidates = list(SIGN_CORRECTIONS)
    for name, sides in ident.variants.items():
        candidates.append((name, lambda _i, p, sides=sides: (lambda s: s[0] - s[1])(sides(**p))))
    for name, residual in candidates:
        ok = True
        for p in grid:
            r = residual(ident, p)
            if r is None or not r.is_zero():
                ok = False
                break
        if ok:
            return name
    return "none found"
