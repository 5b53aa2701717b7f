"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when an identity
residual is nonzero or a numeric check is out of tolerance, 2 on usage
errors. Output is line-delimited JSON; floats carry 17 significant digits
and exact values use the canonical rational / coefficient-list text forms.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .classical import bernoulli_poly, euler_poly
from .exact import Poly, parse_rational
from .identities import IDENTITY_IDS, default_param_vectors, get_identity, make_grid, verify
from .norlund import Kind, ParamVec, norlund_poly
from .stochastic import (
    DensityKind,
    McConfig,
    PadicConfig,
    QuadConfig,
    exact_moment,
    mc_moment,
    padic_convergence,
    quad_moment,
    tail_bound,
    volkenborn_truncated,
)

__all__ = ["main", "run", "dumps"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _encode(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            return json.dumps(str(v))
        return format(v, ".17g") if v != int(v) or abs(v) >= 1e17 else format(v, ".1f")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (Fraction, Poly, ParamVec)):
        return json.dumps(str(v))
    if isinstance(v, dict):
        return "{" + ",".join(json.dumps(str(k)) + ":" + _encode(x) for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_encode(x) for x in v) + "]"
    return json.dumps(v)


def dumps(obj) -> str:
    """Compact JSON with floats at 17 significant digits."""
    return _encode(obj)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _paramvec(text: str) -> ParamVec:
    try:
        return ParamVec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer list: {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _pos_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text}")
    return v


def _u64(text: str) -> int:
    v = _nonneg(text)
    if v >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="volkenborn", description="Exact Bernoulli/Euler/Nörlund computations and checks.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    for name, what in (("bernoulli", "Bernoulli"), ("euler", "Euler")):
        p = sub.add_parser(name, help=f"{what} number or polynomial")
        p.add_argument("--n", type=_nonneg, required=True, help="degree")
        p.add_argument("--x", type=_rational, help="evaluate the polynomial at this rational")
        p.add_argument("--poly", action="store_true", help="print the coefficient list")

    p = sub.add_parser("norlund", help="higher-order Bernoulli/Euler number or polynomial")
    p.add_argument("--kind", choices=("b", "e"), required=True)
    p.add_argument("--a", type=_paramvec, required=True, help="parameters, e.g. 1,1 or 2,-1/3")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--x", type=_rational)
    p.add_argument("--poly", action="store_true")

    p = sub.add_parser("verify", help="check an identity over a parameter grid")
    p.add_argument("--id", required=True, help="one of: " + ", ".join(IDENTITY_IDS))
    p.add_argument("--n-max", type=_nonneg, default=10)
    p.add_argument("--k-max", type=_nonneg, help="cap on k, or maximal order for parameter vectors")
    p.add_argument("--p-max", type=_positive, default=3, help="orders p = 1..p-max for Nörlund-Kim identities")
    p.add_argument("--m", type=_int_list, help="comma-separated multipliers")
    p.add_argument("--a", type=_paramvec, help="parameters, cycled to each order (PROP42: list of scalars)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    for name, help_ in (("quad", "quadrature of the moment integral"), ("mc", "Monte Carlo moment estimate")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--kind", choices=("logistic", "sech"), required=True)
        p.add_argument("--n", type=_nonneg, required=True)
        p.add_argument("--x", type=_rational, required=True)
        if name == "quad":
            p.add_argument("--tol", type=_pos_float, default=1e-10)
            p.add_argument("--nodes", type=_positive, default=32, help="Gauss-Legendre order per unit panel")
            p.add_argument("--T", type=_pos_float, help="truncation half-width (default: from the tail bound)")
        else:
            p.add_argument("--samples", type=int, required=True)
            p.add_argument("--seed", type=_u64, required=True)

    p = sub.add_parser("padic", help="p-adic convergence of truncated Volkenborn sums")
    p.add_argument("--mode", choices=("zero", "fermionic"), required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--N-max", dest="N_max", type=_nonneg, required=True)
    return parser


def _value_record(args, poly: Poly, head: dict) -> dict:
    rec = dict(head)
    if args.x is not None:
        rec["x"] = args.x
    if args.poly:
        rec["poly"] = poly
    if args.x is not None:
        rec["value"] = poly(args.x)
    elif not args.poly:
        rec["value"] = poly(0)
    return rec


def _cmd_classical(args, out):
    poly = (bernoulli_poly if args.command == "bernoulli" else euler_poly)(args.n)
    out.write(dumps(_value_record(args, poly, {"n": args.n})) + "\n")
    return 0


def _cmd_norlund(args, out):
    poly = norlund_poly(Kind.coerce(args.kind), args.a, args.n)
    out.write(dumps(_value_record(args, poly, {"kind": args.kind, "a": args.a, "n": args.n})) + "\n")
    return 0


_M_PARITY = {"RAABE_E_ODD": 1, "NIELSEN_EVEN": 0, "EVEN_RAABE_HIGHER": 0}


def _cmd_verify(args, out):
    try:
        ident = get_identity(args.id)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    iid = ident.id
    if args.m is not None:
        if "m" not in ident.keys:
            raise UsageError(f"--m does not apply to {iid}")
        for m in args.m:
            if m < 1:
                raise UsageError(f"--m values must be >= 1 (got {m})")
            parity = _M_PARITY.get(iid)
            if parity is not None and m % 2 != parity:
                raise UsageError(f"{iid} requires {'odd' if parity else 'even'} m (got {m})")
    opts = {"n_max": args.n_max, "k_max": args.k_max, "p_values": tuple(range(1, args.p_max + 1))}
    if args.m is not None:
        opts["m_values"] = args.m
    if args.a is not None:
        if iid == "PROP42":
            if not args.a:
                raise UsageError("--a must list at least one scalar for PROP42")
            opts["scalars"] = tuple(args.a)
        elif "a" in ident.keys:
            k_min = 1 if iid.startswith("MULTINOMIAL") else 0
            k_max = 3 if args.k_max is None else args.k_max
            if not args.a and k_max > 0:
                raise UsageError("--a must not be empty")
            opts["a_vectors"] = default_param_vectors(k_max, base=args.a, k_min=k_min)
        else:
            raise UsageError(f"--a does not apply to {iid}")
    report = verify(ident, make_grid(ident, **opts), search=True)
    if args.format == "json":
        out.write(report.to_json_lines())
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        out.write(report.to_text())
    return 0 if report.ok else 1


def _cmd_quad(args, out):
    kind = DensityKind.coerce(args.kind)
    poly = Poly.monomial(args.n)
    cfg = QuadConfig(T=args.T, nodes=args.nodes, tol=args.tol)
    if cfg.T is not None:
        bound = tail_bound(kind, poly, args.x, cfg.T)
        if not bound < cfg.tol:
            raise UsageError(f"--T {cfg.T} leaves tail bound {bound:.3g} >= tol {cfg.tol:.3g}")
    re, im = quad_moment(kind, poly, args.x, cfg)
    exact = exact_moment(kind, args.n, args.x)
    err = abs(re - float(exact))
    ok = err < args.tol and im < args.tol
    rec = {"kind": args.kind, "n": args.n, "x": args.x, "re": re, "im_abs": im,
           "exact": exact, "abs_err": err, "tol": args.tol, "pass": ok}
    out.write(dumps(rec) + "\n")
    return 0 if ok else 1


def _cmd_mc(args, out):
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    kind = DensityKind.coerce(args.kind)
    est = mc_moment(kind, Poly.monomial(args.n), args.x, McConfig(args.samples, args.seed))
    exact = exact_moment(kind, args.n, args.x)
    ok = est.within(exact, 4.0)
    rec = {"kind": args.kind, "n": args.n, "x": args.x, "samples": args.samples, "seed": args.seed,
           "estimate": est.mean, "stderr": est.stderr, "exact": exact, "pass": ok}
    out.write(dumps(rec) + "\n")
    return 0 if ok else 1


def _cmd_padic(args, out):
    try:
        cfg = PadicConfig(args.p, args.n, args.N_max, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    target = cfg.target
    rows = padic_convergence(cfg)
    for N, v in rows:
        rec = {"N": N, "sum": volkenborn_truncated(cfg, N), "target": target,
               "valuation": "inf" if v == math.inf else v}
        out.write(dumps(rec) + "\n")
    vals = [v for _, v in rows]
    nondecreasing = all(a <= b for a, b in zip(vals, vals[1:]))
    out.write(dumps({"mode": args.mode, "p": args.p, "n": args.n, "N_max": args.N_max,
                     "nondecreasing": nondecreasing, "pass": nondecreasing}) + "\n")
    return 0 if nondecreasing else 1


_COMMANDS = {
    "bernoulli": _cmd_classical,
    "euler": _cmd_classical,
    "norlund": _cmd_norlund,
    "verify": _cmd_verify,
    "quad": _cmd_quad,
    "mc": _cmd_mc,
    "padic": _cmd_padic,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
