"""Command-line front end.

A thin shell over the library: every subcommand parses arguments, calls
exactly one library entry point, and serializes the result (canonical JSON
for series, ``{"value": [re, im], "err": e}`` for numeric values).

Exit codes: 0 success, 1 verification failures, 2 contract violations,
3 numeric failures.  Failures emit a machine-readable JSON object on
stderr naming the violated precondition.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .borel import (
    borel_transform,
    bullet_product,
    dual_star_conjugated,
    dual_star_direct,
    hadamard_product,
    hurwitz_convolution,
    inverse_borel,
)
from .errors import ContractError, KindMismatch, NumericFailure
from .heisenberg import star_product
from .lab.contours import ContourPath, lateral_contour, laplace_sum, stokes_difference
from .lab.cycle import hadamard_contour_product, vanishing_cycle_product
from .lab.pade import borel_plane_singularities
from .oracles import (
    dual_pole_series,
    elliptic_k_series,
    euler_series,
    hypergeometric_series,
)
from .series import Kind, dumps, load
from .values import NumericValue


def _parse_complex(text: str) -> complex:
    """Parse ``"re"`` or ``"re,im"``."""
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ContractError(f"cannot parse complex number from {text!r}; use 're' or 're,im'")


def _parse_point(text: str | None, ndof: int):
    """Parse ``"q=0.3,p=0.2"`` (or ``q1=..,p2=..`` for several dof) into
    (qs, ps) tuples; missing coordinates default to 0."""
    qs = [0.0] * ndof
    ps = [0.0] * ndof
    if not text:
        return tuple(qs), tuple(ps)
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ContractError(f"cannot parse point assignment {piece!r}; use name=value")
        name, _, raw = piece.partition("=")
        name = name.strip()
        try:
            value = float(raw)
        except ValueError:
            raise ContractError(f"cannot parse number {raw!r} in point {text!r}") from None
        kind, digits = name[:1], name[1:]
        if kind not in ("q", "p") or (digits and not digits.isdigit()):
            raise ContractError(f"unknown coordinate {name!r}; use q, p, q1, p2, ...")
        idx = int(digits) - 1 if digits else 0
        if not 0 <= idx < ndof:
            raise ContractError(f"coordinate {name!r} is out of range for {ndof} dof")
        (qs if kind == "q" else ps)[idx] = value
    return tuple(qs), tuple(ps)


def _emit_series(series, out_path):
    text = dumps(series)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_value(v: NumericValue):
    print(json.dumps({"value": [v.value.real, v.value.imag], "err": v.err}))


# -- subcommand handlers -------------------------------------------------


def _cmd_star(args):
    f, g = load(args.f), load(args.g)
    if f.kind != g.kind:
        raise KindMismatch(f"inputs have different kinds: {f.kind.value} vs {g.kind.value}")
    product = star_product(f, g) if f.kind == Kind.T else dual_star_direct(f, g)
    _emit_series(product, args.out)
    return 0


def _cmd_dual_star(args):
    f, g = load(args.f), load(args.g)
    fn = dual_star_conjugated if args.route == "conjugated" else dual_star_direct
    _emit_series(fn(f, g), args.out)
    return 0


def _cmd_borel(args):
    f = load(args.series)
    _emit_series(inverse_borel(f) if args.inverse else borel_transform(f), args.out)
    return 0


def _cmd_bullet(args):
    f, g = load(args.f), load(args.g)
    _emit_series(bullet_product(f, g), args.out)
    return 0


def _cmd_hurwitz(args):
    f, g = load(args.f), load(args.g)
    _emit_series(hurwitz_convolution(f, g), args.out)
    return 0


def _cmd_hadamard(args):
    f, g = load(args.f), load(args.g)
    _emit_series(hadamard_product(f, g), args.out)
    return 0


def _builtin_euler_integrand(xi):
    return 1.0 / (1.0 - xi)


def _cmd_laplace(args):
    if (args.series is None) == (args.builtin is None):
        raise ContractError("provide exactly one of --series and --builtin")
    if (args.contour is None) == (args.gamma is None):
        raise ContractError("provide exactly one of --contour and --gamma")
    if args.builtin is not None:
        integrand = _builtin_euler_integrand  # closed form of the transform
    else:
        integrand = load(args.series)
    if args.gamma is not None:
        side = "above" if args.gamma == "minus" else "below"
        contour = lateral_contour(side, args.delta, args.R)
    else:
        with open(args.contour) as fh:
            contour = ContourPath.from_json_dict(json.load(fh))
    t = _parse_complex(args.t)
    _emit_value(laplace_sum(integrand, contour, t))
    return 0


def _cmd_stokes(args):
    t = float(args.t)
    got = stokes_difference(t, args.delta, args.R)
    ref = 2j * math.pi * math.exp(-1.0 / t) / t
    print(
        json.dumps(
            {
                "value": [got.value.real, got.value.imag],
                "err": got.err,
                "reference": [ref.real, ref.imag],
            }
        )
    )
    return 0


def _cmd_cycle_product(args):
    f, g = load(args.f), load(args.g)
    qs, ps = _parse_point(args.at, f.ndof)
    if args.contour_form:
        v = hadamard_contour_product(f, g, args.xi, (qs, ps), M=args.M, rho=args.rho)
    else:
        point = (qs[0], ps[0]) if f.ndof == 1 else (qs, ps)
        v = vanishing_cycle_product(f, g, args.xi, point, M=args.M)
    _emit_value(v)
    return 0


def _cmd_poles(args):
    f = load(args.series)
    qs, ps = _parse_point(args.at, f.ndof)
    try:
        L, _, M = args.pade.partition("/")
        L, M = int(L), int(M)
    except ValueError:
        raise ContractError(f"cannot parse Pade order {args.pade!r}; use 'L/M'") from None
    report = borel_plane_singularities(f, qs, ps, L=L, M=M)
    print(json.dumps(report.to_json_dict()))
    return 0


def _cmd_verify(args):
    from . import verify

    results = verify.run(args.suite)
    if args.format == "text":
        print(verify.format_report(results))
    else:
        for r in results:
            print(
                json.dumps(
                    {
                        "name": r.name,
                        "suite": r.suite,
                        "status": "pass" if r.passed else "fail",
                        "measured": r.measured,
                        "threshold": r.threshold,
                        "detail": r.detail,
                        "seconds": round(r.seconds, 4),
                    }
                )
            )
    return 0 if all(r.passed for r in results) else 1


def _cmd_oracle(args):
    name = args.name
    if name == "euler":
        series = euler_series(args.k)
    elif name == "dual-pole":
        series = dual_pole_series(args.t_cap, args.qp_cap)
    elif name == "elliptic-k":
        series = elliptic_k_series(args.k)
    else:  # hypergeometric
        if args.a is None or args.b is None:
            raise ContractError("hypergeometric needs --a and --b")
        from .rationals import Rat

        def as_rat(text):
            num, _, den = text.partition("/")
            try:
                return Rat(int(num), int(den)) if den else Rat(int(num))
            except ValueError:
                raise ContractError(
                    f"cannot parse rational {text!r}; use 'n' or 'n/d'"
                ) from None

        series = hypergeometric_series(as_rat(args.a), as_rat(args.b), args.k)
    _emit_series(series, args.out)
    return 0


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resurgent",
        description="Exact star/dual products on truncated series plus their "
        "numeric resummation laboratory.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def pair_cmd(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("f", help="left input series (canonical JSON file)")
        p.add_argument("g", help="right input series (canonical JSON file)")
        p.add_argument("--out", help="output path (default: stdout)")
        p.set_defaults(fn=fn)
        return p

    pair_cmd("star", _cmd_star, "noncommutative product (flow kind star, xi kind dual)")
    p = pair_cmd("dual-star", _cmd_dual_star, "dual product of xi-kind series")
    p.add_argument(
        "--route",
        choices=("direct", "conjugated"),
        default="direct",
        help="term-law product or the transform-conjugated route",
    )
    pair_cmd("bullet", _cmd_bullet, "pointwise product with factorial xi-weights")
    pair_cmd("hurwitz", _cmd_hurwitz, "additive convolution in xi")
    pair_cmd("hadamard", _cmd_hadamard, "coefficientwise product in xi")

    p = sub.add_parser("borel", help="transform between flow and xi kinds")
    p.add_argument("series", help="input series (canonical JSON file)")
    p.add_argument("--inverse", action="store_true", help="xi kind back to flow kind")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_borel)

    p = sub.add_parser("laplace", help="resum a xi-series along a contour")
    p.add_argument("--series", help="xi-kind series file")
    p.add_argument(
        "--builtin",
        choices=("euler",),
        help="closed-form integrand 1/(1-xi) instead of a series file",
    )
    p.add_argument("--contour", help="contour JSON file")
    p.add_argument(
        "--gamma",
        choices=("plus", "minus"),
        help="lateral detour contour below (plus) or above (minus) the pole at 1",
    )
    p.add_argument("--t", required=True, help="flow parameter, 're' or 're,im'")
    p.add_argument("--delta", type=float, default=0.1, help="detour half-height")
    p.add_argument("--R", type=float, default=8.0, help="where the ray tail starts")
    p.set_defaults(fn=_cmd_laplace)

    p = sub.add_parser("stokes", help="difference of the two lateral resummations")
    p.add_argument("--t", required=True, type=float)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--R", type=float, default=8.0)
    p.set_defaults(fn=_cmd_stokes)

    p = sub.add_parser("cycle-product", help="numeric dual product by cycle integration")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--xi", required=True, type=float, help="cycle radius parameter")
    p.add_argument("--at", help="evaluation point, e.g. 'q=0.1,p=0.1' (default origin)")
    p.add_argument("--M", type=int, default=256, help="angular sample count")
    p.add_argument(
        "--contour-form",
        action="store_true",
        help="use the circle-mean contour (xi-independent one-dof inputs)",
    )
    p.add_argument("--rho", type=float, help="contour radius (default sqrt(|xi|))")
    p.set_defaults(fn=_cmd_cycle_product)

    p = sub.add_parser("poles", help="transform-plane singularities of a flow series")
    p.add_argument("--series", required=True)
    p.add_argument("--at", help="position slice, e.g. 'q=0.3,p=0.2' (default origin)")
    p.add_argument("--pade", default="8/1", help="approximant orders 'L/M'")
    p.set_defaults(fn=_cmd_poles)

    p = sub.add_parser("verify", help="run the named self-check suites")
    p.add_argument(
        "--suite",
        choices=("algebra", "borel", "numeric", "all"),
        default="all",
    )
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("oracle", help="emit a built-in reference series")
    p.add_argument(
        "name", choices=("euler", "dual-pole", "elliptic-k", "hypergeometric")
    )
    p.add_argument("--k", type=int, default=12, help="series order")
    p.add_argument("--t-cap", dest="t_cap", type=int, default=8)
    p.add_argument("--qp-cap", dest="qp_cap", type=int, default=24)
    p.add_argument("--a", help="rational parameter 'n' or 'n/d'")
    p.add_argument("--b", help="rational parameter 'n' or 'n/d'")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ContractError as exc:
        _fail(args.subcommand, exc)
        return 2
    except NumericFailure as exc:
        _fail(args.subcommand, exc)
        return 3
    except FileNotFoundError as exc:
        _fail(args.subcommand, ContractError(f"cannot open file: {exc.filename}"))
        return 2
    except json.JSONDecodeError as exc:
        _fail(args.subcommand, ContractError(f"malformed JSON input: {exc}"))
        return 2


def _fail(subcommand, exc):
    sys.stderr.write(
        json.dumps(
            {
                "error": type(exc).__name__,
                "message": str(exc),
                "subcommand": subcommand,
            }
        )
        + "\n"
    )


if __name__ == "__main__":
    sys.exit(main())
