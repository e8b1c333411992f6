"""Command-line front end.

Subcommands: analyze | solve-weight | finite-type | singular-locus | embed |
flows | discrete.  Exit codes: 0 success, 2 closure violation, 3 flow
verification failure, 64 usage or parse errors.  The environment variable
PARACR_SEED fixes the sampling seed used by flow verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import flows as flows_mod
from . import report as report_mod
from .embedding import EmbeddingError, solve_embedding
from .normalform import (
    DefiningFunction,
    NormalFormError,
    detect_case,
    finite_type,
    singular_locus,
)
from .poly import Poly, PolyParseError, UnsupportedDegreeError, format_fraction
from .solver import solve_weight
from .surface import InvalidSurfaceError, ModelSurface

EXIT_OK = 0
EXIT_CLOSURE = 2
EXIT_FLOW = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_gamma(text: str) -> List[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid gamma list {text!r}: {exc}")


def _seed() -> int:
    raw = os.environ.get("PARACR_SEED")
    if raw is None:
        return flows_mod.DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"PARACR_SEED must be an integer, got {raw!r}")


def build_parser() -> _Parser:
    parser = _Parser(prog="paracr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_surface_flags(p):
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--gamma", type=str, required=True,
                       help="comma-separated rationals, e.g. 0,1,0 or 3/2,1")

    p = sub.add_parser("analyze", help="full pipeline report")
    add_surface_flags(p)
    p.add_argument("--weight-cap", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("solve-weight", help="kernel basis at one weight")
    add_surface_flags(p)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("finite-type", help="type detection for y = a + phi")
    p.add_argument("--phi", type=str, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("singular-locus", help="zero locus trichotomy of P_xb")
    add_surface_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("embed", help="series solution of the transport problem")
    p.add_argument("--psi", type=str, required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("flows", help="verify the admissible named flows")
    add_surface_flags(p)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("discrete", help="discrete automorphism group")
    add_surface_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text, end="")


def _surface(args) -> ModelSurface:
    gamma = _parse_gamma(args.gamma)
    try:
        return ModelSurface(args.k, tuple(gamma))
    except (UnsupportedDegreeError, InvalidSurfaceError) as exc:
        raise UsageError(str(exc))


def _cmd_analyze(args) -> int:
    surface = _surface(args)
    if args.weight_cap is not None and args.weight_cap < surface.k:
        raise UsageError(f"--weight-cap must be at least k={surface.k}")
    rep = report_mod.analyze(
        surface.k,
        surface.gamma,
        weight_cap=args.weight_cap,
        seed=_seed(),
        tolerance=args.tolerance,
    )
    _emit(report_mod.report_to_dict(rep), report_mod.render_text(rep), args.format)
    if rep.has_closure_violation:
        return EXIT_CLOSURE
    if not rep.flows_passed:
        return EXIT_FLOW
    return EXIT_OK


def _cmd_solve_weight(args) -> int:
    surface = _surface(args)
    kb = solve_weight(surface, args.weight)
    payload = {
        "k": surface.k,
        "gamma": [format_fraction(g) for g in surface.gamma],
        "weight": kb.weight,
        "dimension": kb.dimension,
        "system_shape": list(kb.system_shape),
        "generators": [
            {
                "alpha": f.alpha.to_text(),
                "beta": f.beta.to_text(),
                "xi": f.xi.to_text(),
                "eta": f.eta.to_text(),
            }
            for f in kb.basis
        ],
    }
    lines = [
        f"weight {kb.weight}: dimension {kb.dimension} "
        f"(system {kb.system_shape[0]} x {kb.system_shape[1]})"
    ]
    for f in kb.basis:
        lines.append(
            f"  alpha={f.alpha} | beta={f.beta} | xi={f.xi} | eta={f.eta}"
        )
    _emit(payload, "\n".join(lines) + "\n", args.format)
    return EXIT_OK


def _cmd_finite_type(args) -> int:
    phi = Poly.parse(args.phi)
    result = finite_type(DefiningFunction(phi))
    payload = {"kind": result.kind}
    if result.is_finite:
        payload["k"] = result.k
        payload["gamma"] = [format_fraction(g) for g in result.gamma]
        payload["normalized"] = result.normalized.to_text()
        text = (
            f"FINITE k={result.k} "
            f"gamma=({', '.join(format_fraction(g) for g in result.gamma)}) "
            f"normalized={result.normalized}\n"
        )
    else:
        text = "INFINITE\n"
    _emit(payload, text, args.format)
    return EXIT_OK


def _cmd_singular_locus(args) -> int:
    surface = _surface(args)
    locus = singular_locus(surface)
    payload = {"kind": locus.kind}
    text = locus.kind
    if locus.line is not None:
        payload["line"] = locus.line.to_text()
        text += f" ({locus.line})"
    if locus.line_count is not None:
        payload["line_count"] = locus.line_count
        text += f" ({locus.line_count} real lines)"
    _emit(payload, text + "\n", args.format)
    return EXIT_OK


def _cmd_embed(args) -> int:
    psi = Poly.parse(args.psi)
    if args.order < 1:
        raise UsageError("--order must be at least 1")
    series = solve_embedding(psi, args.order)
    payload = {
        "psi": psi.to_text(),
        "order": series.order,
        "coefficients": [c.to_text() for c in series.coeffs],
    }
    lines = [f"psi = {psi}, order {series.order}"]
    for n, c in enumerate(series.coeffs):
        lines.append(f"  c_{n} = {c}")
    _emit(payload, "\n".join(lines) + "\n", args.format)
    return EXIT_OK


def _cmd_flows(args) -> int:
    surface = _surface(args)
    detection = detect_case(surface)
    samples = flows_mod.sample_on_surface(surface, report_mod.DEFAULT_FLOW_SAMPLES, seed=_seed())
    verifications = []
    for name in flows_mod.admissible_flow_names(detection):
        param, partner = report_mod._FLOW_PARAMS[name]
        fm = flows_mod.flow(name, surface, param)
        verifications.append(
            flows_mod.verify_flow(fm, samples, group_partner=partner, surface_tol=args.tolerance)
        )
    payload = {"flows": [report_mod._verification_dict(v) for v in verifications]}
    lines = []
    for v in verifications:
        lines.append(f"{v.flow_name}: {'pass' if v.passed else 'FAIL'}")
        for c in v.checks:
            residual = "none" if c.max_residual is None else f"{c.max_residual:.3e}"
            lines.append(f"  {c.check}: {'pass' if c.passed else 'FAIL'} (max residual {residual})")
    _emit(payload, "\n".join(lines) + "\n", args.format)
    return EXIT_OK if all(v.passed for v in verifications) else EXIT_FLOW


def _cmd_discrete(args) -> int:
    surface = _surface(args)
    group = flows_mod.discrete_group(surface)
    payload = {
        "kind": group.kind,
        "generators": [list(g.signs()) for g in group.generators],
    }
    lines = [group.kind]
    for g in group.generators:
        sx, sy, sa, sb = g.signs()
        lines.append(f"  (x, y, a, b) -> ({sx:+d} x, {sy:+d} y, {sa:+d} a, {sb:+d} b)")
    _emit(payload, "\n".join(lines) + "\n", args.format)
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "solve-weight": _cmd_solve_weight,
    "finite-type": _cmd_finite_type,
    "singular-locus": _cmd_singular_locus,
    "embed": _cmd_embed,
    "flows": _cmd_flows,
    "discrete": _cmd_discrete,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (
        UsageError,
        PolyParseError,
        UnsupportedDegreeError,
        InvalidSurfaceError,
        NormalFormError,
        EmbeddingError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
