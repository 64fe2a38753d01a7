"""
Command-Line Interface for the Heisenberg Spectra Pipeline
==========================================================

Subcommands:

    quotient   geometry summary: L, vol(M), the lattice and its dual
    enumerate  merged eigenvalue list up to --lambda-max
    count      N_a, N_b, N and N / lambda^(d+1) on a lambda grid
    heat       type (a) heat trace and t^(d+1) G(t) on a t grid
    constant   Weyl constant C_{d,alpha}
    verify     convergence of N / lambda^(d+1) to the Weyl target over decades,
               optionally with the heat-trace cross-check and an SVG chart

Data goes to stdout (or --out); the run header and log go to stderr.

Exit codes: 0 success, 2 invalid input, 3 budget or quadrature failure,
4 verification threshold not met.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import pandas as pd

from src.config import (
    DEFAULT_QUOTIENT,
    NUMERICS,
    OUTPUT_FORMATS,
    RunConfig,
    RunConfigError,
    get_output_path,
)
from src.spectra import (
    EnumerationBudgetExceeded,
    FormDegree,
    QuadratureError,
    SpectralValidationError,
    VerificationFailure,
    box_b_convergence_report,
    box_b_count,
    box_b_heat_trace,
    box_b_weyl_target,
    convergence_report,
    count_total,
    enumerate_spectrum,
    karamata_target,
    make_quotient,
    scaled_trace_sequence,
    weyl_constant,
)
from src.spectra.quotient import QuotientGeometry
from src.utils.exports import (
    constants_table,
    counts_table,
    heat_table,
    quotient_table,
    records_table,
    render_convergence_svg,
    render_table,
    verification_table,
    write_convergence_svg,
    write_text,
)
from src.utils.rationals import parse_decades, parse_int_list, parse_rational, parse_real_list

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_VERIFICATION = 4


# =============================================================================
# PARSER
# =============================================================================

def _global_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", dest="fmt", choices=OUTPUT_FORMATS, default="csv",
                        help="output format (svg only for verify)")
    parent.add_argument("--out", default=None, help="write output to this path instead of stdout")
    parent.add_argument("--budget", type=int, default=NUMERICS.enumeration_budget,
                        help="enumeration work cap")
    parent.add_argument("--tol", type=float, default=NUMERICS.quadrature_tol,
                        help="absolute quadrature tolerance for Weyl constants")
    parent.add_argument("--heat-tol", dest="heat_tol", type=float, default=NUMERICS.heat_tol,
                        help="relative truncation tolerance for heat-trace series")
    parent.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    return parent


def _quotient_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--d", type=int, default=DEFAULT_QUOTIENT.d, help="complex dimension")
    parent.add_argument("--ell", default=",".join(str(v) for v in DEFAULT_QUOTIENT.ell),
                        help="divisor chain, comma separated")
    parent.add_argument("--c", default=DEFAULT_QUOTIENT.c, help="center parameter, 'num/den'")
    return parent


def _operator_flags(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--alpha", default=None, help="alpha of L_alpha, 'num/den' (default 0)")
    group.add_argument("--forms", default=None, help="Kohn Laplacian on (p,q)-forms, 'p,q'")


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    geometry = _quotient_flags()
    parser = argparse.ArgumentParser(
        prog="heisenberg_spectra",
        description="Spectra and Weyl asymptotics on compact Heisenberg quotients",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser("quotient", parents=[common, geometry], help="geometry summary")

    enum_parser = subparsers.add_parser("enumerate", parents=[common, geometry],
                                        help="merged eigenvalue list")
    enum_parser.add_argument("--alpha", default="0", help="alpha of L_alpha, 'num/den'")
    enum_parser.add_argument("--lambda-max", dest="lambda_max", type=float, required=True)
    enum_parser.add_argument("--no-type-b", dest="include_type_b", action="store_false",
                             help="type (a) eigenvalues only")

    count_parser = subparsers.add_parser("count", parents=[common, geometry],
                                         help="counting function on a lambda grid")
    _operator_flags(count_parser)
    count_parser.add_argument("--lambda", dest="lambdas", required=True,
                              help="comma separated thresholds, ascending")

    heat_parser = subparsers.add_parser("heat", parents=[common, geometry], help="heat trace")
    _operator_flags(heat_parser)
    heat_parser.add_argument("--t", dest="t_values", required=True, help="comma separated times")

    const_parser = subparsers.add_parser("constant", parents=[common], help="Weyl constant")
    const_parser.add_argument("--d", type=int, default=DEFAULT_QUOTIENT.d)
    const_parser.add_argument("--alpha", default="0", help="alpha in [-d, d]")
    const_parser.add_argument("--boundary-check", action="store_true",
                              help="report C_{d,d} next to C_{d,d-epsilon}")

    verify_parser = subparsers.add_parser("verify", parents=[common, geometry],
                                          help="Weyl-law convergence check")
    _operator_flags(verify_parser)
    verify_parser.add_argument("--lambda-decades", dest="decades", required=True,
                               help="'a:b' for thresholds 10^a ... 10^b")
    verify_parser.add_argument("--svg", default=None, help="also write the convergence chart here")
    verify_parser.add_argument("--heat", default=None,
                               help="comma separated t values for the heat-trace cross-check")
    verify_parser.add_argument("--pass-threshold", dest="pass_threshold", type=float,
                               default=NUMERICS.pass_threshold,
                               help="pass when the final count row has |rel_error| below this; "
                                    "heat rows are reported, not judged")
    return parser


# =============================================================================
# RUN SETUP
# =============================================================================

def _forms_pair(text: Optional[str]):
    if text is None:
        return None
    pair = parse_int_list(text)
    if len(pair) != 2:
        raise RunConfigError(f"--forms expects 'p,q', got {text!r}")
    return pair


def _run_config(args: argparse.Namespace) -> RunConfig:
    lambdas = None
    t_values = None
    extra = {}
    if args.command == "enumerate":
        lambdas = [args.lambda_max]
        extra["include_type_b"] = args.include_type_b
    elif args.command == "count":
        lambdas = parse_real_list(args.lambdas)
    elif args.command == "heat":
        t_values = parse_real_list(args.t_values)
    elif args.command == "constant":
        extra["boundary_check"] = args.boundary_check
    elif args.command == "verify":
        lambdas = parse_decades(args.decades)
        t_values = parse_real_list(args.heat) if args.heat else None
        extra.update({"lambda_decades": args.decades, "svg": args.svg,
                      "pass_threshold": args.pass_threshold})

    forms = _forms_pair(getattr(args, "forms", None))
    alpha = getattr(args, "alpha", None)
    if alpha is None and forms is None and args.command in ("count", "heat", "verify"):
        alpha = "0"
    return RunConfig(
        command=args.command,
        d=args.d,
        ell=parse_int_list(getattr(args, "ell", "1")) if args.command != "constant" else (),
        c=getattr(args, "c", DEFAULT_QUOTIENT.c),
        alpha=alpha,
        forms=forms,
        lambdas=lambdas,
        t_values=t_values,
        tol=args.tol,
        heat_tol=args.heat_tol,
        fmt=args.fmt,
        out=args.out,
        budget=args.budget,
        extra=extra,
    )


def _print_header(config: RunConfig):
    print("=" * 70, file=sys.stderr)
    print(f"HEISENBERG SPECTRA: {config.command.upper()}", file=sys.stderr)
    print("=" * 70, file=sys.stderr)
    for key, value in config.to_dict().items():
        if key != "command":
            print(f"  {key}: {value}", file=sys.stderr)
    print("=" * 70, file=sys.stderr)


def _quotient(config: RunConfig) -> QuotientGeometry:
    return make_quotient(config.d, config.ell, config.c)


def _alpha(config: RunConfig):
    return parse_rational(config.alpha)


def _form_degree(config: RunConfig) -> FormDegree:
    p, q = config.forms
    return FormDegree(d=config.d, p=p, q=q)


def _output_path(name: str, figure: bool = False) -> Path:
    """Bare file names go under the configured output tree."""
    path = Path(name)
    if len(path.parts) == 1:
        return get_output_path(path.name, figure)
    return path


def _emit(text: str, config: RunConfig):
    if config.out:
        path = write_text(text, _output_path(config.out, figure=config.fmt == "svg"))
        logger.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _emit_table(frame: pd.DataFrame, config: RunConfig):
    if config.fmt == "svg":
        raise RunConfigError(f"--format svg is only available for verify, not {config.command}")
    _emit(render_table(frame, config.fmt, config.to_dict()), config)


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_quotient(config: RunConfig) -> int:
    _emit_table(quotient_table(_quotient(config)), config)
    return EXIT_OK


def cmd_enumerate(config: RunConfig) -> int:
    q = _quotient(config)
    records = enumerate_spectrum(q, _alpha(config), config.lambdas[0], config.budget,
                                 include_type_b=config.extra["include_type_b"])
    logger.info("%d distinct eigenvalues, total multiplicity %d",
                len(records), sum(r.multiplicity for r in records))
    _emit_table(records_table(records), config)
    return EXIT_OK


def cmd_count(config: RunConfig) -> int:
    q = _quotient(config)
    if config.forms is not None:
        deg = _form_degree(config)
        counts = [box_b_count(q, deg, lam, config.budget) for lam in config.lambdas]
        frame = counts_table(counts, deg)
    else:
        alpha = _alpha(config)
        counts = [count_total(q, alpha, lam, config.budget) for lam in config.lambdas]
        frame = counts_table(counts)
    _emit_table(frame, config)
    return EXIT_OK


def cmd_heat(config: RunConfig) -> int:
    q = _quotient(config)
    if config.forms is not None:
        deg = _form_degree(config)
        points = [box_b_heat_trace(q, deg, t, config.heat_tol) for t in config.t_values]
    else:
        points = scaled_trace_sequence(q, _alpha(config), config.t_values, config.heat_tol)
    _emit_table(heat_table(points), config)
    return EXIT_OK


def cmd_constant(config: RunConfig) -> int:
    alpha = _alpha(config)
    constants = [weyl_constant(config.d, alpha, config.tol)]
    if config.extra["boundary_check"]:
        constants += [
            weyl_constant(config.d, config.d, config.tol),
            weyl_constant(config.d, config.d - NUMERICS.boundary_epsilon, config.tol,
                          rtol=NUMERICS.boundary_rtol),
        ]
    _emit_table(constants_table(constants), config)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    q = _quotient(config)
    if config.forms is not None:
        deg = _form_degree(config)
        rows = box_b_convergence_report(q, deg, config.lambdas, config.tol, config.budget)
        heat_points = [box_b_heat_trace(q, deg, t, config.heat_tol) for t in config.t_values or []]
        heat_target = math.factorial(q.d + 1) * box_b_weyl_target(q.d, deg, q.volume, config.tol)
    else:
        alpha = _alpha(config)
        rows = convergence_report(q, alpha, config.lambdas, config.tol, config.budget)
        heat_points = (scaled_trace_sequence(q, alpha, config.t_values, config.heat_tol)
                       if config.t_values else [])
        heat_target = karamata_target(q, alpha, config.tol)

    title = f"d={q.d}, ell={list(q.ell)}, c={config.c}"
    svg_path = config.extra.get("svg")
    if svg_path:
        path = write_convergence_svg(rows, _output_path(svg_path, figure=True), title)
        logger.info("wrote %s", path)
    if config.fmt == "svg":
        _emit(render_convergence_svg(rows, title), config)
    else:
        frame = verification_table(rows, heat_points, heat_target if heat_points else None)
        _emit(render_table(frame, config.fmt, config.to_dict()), config)

    if heat_points:
        logger.info("heat route: final rel_error %+.3e at t=%g",
                    heat_points[-1].scaled / heat_target - 1.0, heat_points[-1].t)
    threshold = config.extra["pass_threshold"]
    final = rows[-1].rel_error
    if abs(final) >= threshold:
        raise VerificationFailure(final, threshold)
    logger.info("verification passed: final |rel_error| = %.3e < %g", abs(final), threshold)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "quotient": cmd_quotient,
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "heat": cmd_heat,
    "constant": cmd_constant,
    "verify": cmd_verify,
}


# =============================================================================
# MAIN
# =============================================================================

def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_VALIDATION

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )

    try:
        config = _run_config(args)
        _print_header(config)
        return COMMANDS[args.command](config)
    except (SpectralValidationError, RunConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (EnumerationBudgetExceeded, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
