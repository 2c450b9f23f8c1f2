"""Command-line interface: single protocol runs, reference cross-checks,
fidelity-surface sweeps, and the runtime invariant suite.

Exit codes: 0 success, 1 check failure, 2 usage error.
"""

import argparse
import json
import math
import sys

from . import verify as verify_mod
from .bellmix import ResourceParams
from .sweep import SweepGrid, panel_preset, run_sweep, write_csv
from .teleport import (
    CorrectionStrategy,
    FidelityConvention,
    InputState,
    cross_check_reference,
    run_enumerated,
)

TELEPORT_CSV_HEADER = (
    "m1,m2,probability,amp0_re,amp0_im,amp1_re,amp1_im,fidelity_sq,fidelity_amp"
)


def _fmt(x: float) -> str:
    return format(float(x), ".16e")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellport",
        description="Teleportation over a two-species Bell resource with "
        "optional exchange distortion.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    tp = sub.add_parser("teleport", help="run the protocol at one parameter point")
    tp.add_argument("--theta", type=float, required=True, help="mixing angle")
    tp.add_argument("--ndelta", type=float, default=0.0, help="distortion n*delta")
    tp.add_argument("--alpha", type=float, required=True, help="real amplitude of |0>")
    tp.add_argument("--beta-phase", type=float, default=0.0, help="phase of beta")
    tp.add_argument(
        "--strategy",
        choices=[s.value for s in CorrectionStrategy],
        default=CorrectionStrategy.PAULI_ROT.value,
    )
    tp.add_argument(
        "--convention",
        choices=[c.value for c in FidelityConvention],
        default=FidelityConvention.SQUARED.value,
    )
    tp.add_argument("--format", choices=["table", "csv", "json"], default="table")
    tp.add_argument("--out", default=None, help="write the rendering to a file")
    tp.add_argument("--degrees", action="store_true", help="theta given in degrees")

    sw = sub.add_parser("sweep", help="generate a fidelity surface as CSV")
    sw.add_argument("--panel", choices=["a", "b", "c"], default=None)
    sw.add_argument("--theta-points", type=int, default=None)
    sw.add_argument("--alpha-points", type=int, default=None)
    sw.add_argument("--ndelta", default=None, help="comma-separated list of n*delta")
    sw.add_argument(
        "--strategy",
        choices=[s.value for s in CorrectionStrategy],
        default=None,
        help="overrides the panel strategy",
    )
    sw.add_argument(
        "--convention",
        choices=[c.value for c in FidelityConvention],
        default=FidelityConvention.SQUARED.value,
    )
    sw.add_argument("--out", required=True, help="CSV destination path")

    t1 = sub.add_parser(
        "table1",
        help="cross-check circuit branches against the closed-form reference table",
    )
    t1.add_argument("--theta", type=float, required=True)
    t1.add_argument("--ndelta", type=float, default=0.0)
    t1.add_argument("--alpha", type=float, required=True)
    t1.add_argument("--beta-phase", type=float, default=0.0)
    t1.add_argument("--tolerance", type=float, default=1e-10)
    t1.add_argument("--degrees", action="store_true", help="theta given in degrees")

    vf = sub.add_parser("verify", help="run the full invariant suite")
    vf.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)

    return parser


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "degrees", False):
        args.theta = math.radians(args.theta)
    if hasattr(args, "theta") and not math.isfinite(args.theta):
        parser.error("--theta must be finite")
    if hasattr(args, "ndelta") and args.subcommand != "sweep":
        if not math.isfinite(args.ndelta):
            parser.error("--ndelta must be finite")
    if hasattr(args, "alpha") and not -1.0 <= args.alpha <= 1.0:
        parser.error(f"--alpha must lie in [-1, 1], got {args.alpha}")
    if getattr(args, "tolerance", None) is not None and args.tolerance <= 0:
        parser.error("--tolerance must be positive")
    if args.subcommand == "sweep" and args.ndelta is not None:
        try:
            values = tuple(float(v) for v in args.ndelta.split(","))
        except ValueError:
            parser.error(f"--ndelta must be a comma-separated list of reals")
        if not all(math.isfinite(v) for v in values):
            parser.error("--ndelta values must be finite")
        args.ndelta_values = values
    elif args.subcommand == "sweep":
        args.ndelta_values = None
    return args


def _render_outcome_fields(outcome):
    state = outcome.teleported_state
    if state is None:
        return None, None
    return complex(state.amps[0]), complex(state.amps[1])


def _teleport_table(args, report) -> str:
    lines = [
        f"teleport: theta={args.theta:.9g} ndelta={args.ndelta:.9g} "
        f"alpha={args.alpha:.9g} beta_phase={args.beta_phase:.9g} "
        f"strategy={args.strategy}",
        "m1 m2  probability    teleported state                         "
        "F_sq          F_amp",
    ]
    for o in report.outcomes:
        a0, a1 = _render_outcome_fields(o)
        if a0 is None:
            amps = "(undefined: zero-probability branch)"
        else:
            amps = (
                f"({a0.real:+.6f}{a0.imag:+.6f}j)|0> "
                f"({a1.real:+.6f}{a1.imag:+.6f}j)|1>"
            )
        lines.append(
            f"{o.m1}  {o.m2}   {o.probability:.10f}   {amps:<40} "
            f"{o.fidelity_sq:.10f}  {o.fidelity_amp:.10f}"
        )
    lines.append(f"average fidelity (sq) : {report.avg_fidelity_sq!r}")
    lines.append(f"average fidelity (amp): {report.avg_fidelity_amp!r}")
    lines.append(f"selected convention   : {report.convention.value}")
    return "\n".join(lines) + "\n"


def _teleport_csv(report) -> str:
    lines = [TELEPORT_CSV_HEADER]
    for o in report.outcomes:
        a0, a1 = _render_outcome_fields(o)
        amp_fields = (
            ["", "", "", ""]
            if a0 is None
            else [_fmt(a0.real), _fmt(a0.imag), _fmt(a1.real), _fmt(a1.imag)]
        )
        lines.append(
            ",".join(
                [str(o.m1), str(o.m2), _fmt(o.probability)]
                + amp_fields
                + [_fmt(o.fidelity_sq), _fmt(o.fidelity_amp)]
            )
        )
    return "\n".join(lines) + "\n"


def _teleport_json(args, report) -> str:
    outcomes = []
    for o in report.outcomes:
        a0, a1 = _render_outcome_fields(o)
        outcomes.append(
            {
                "m1": o.m1,
                "m2": o.m2,
                "probability": o.probability,
                "amp0_re": None if a0 is None else a0.real,
                "amp0_im": None if a0 is None else a0.imag,
                "amp1_re": None if a1 is None else a1.real,
                "amp1_im": None if a1 is None else a1.imag,
                "fidelity_sq": o.fidelity_sq,
                "fidelity_amp": o.fidelity_amp,
            }
        )
    payload = {
        "theta": args.theta,
        "ndelta": args.ndelta,
        "alpha": args.alpha,
        "beta_phase": args.beta_phase,
        "strategy": args.strategy,
        "convention": args.convention,
        "outcomes": outcomes,
        "avg_fidelity_sq": report.avg_fidelity_sq,
        "avg_fidelity_amp": report.avg_fidelity_amp,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out_path, summary: str):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)


def cmd_teleport(args) -> int:
    report = run_enumerated(
        InputState.from_alpha1(args.alpha, args.beta_phase),
        ResourceParams(theta=args.theta, ndelta=args.ndelta),
        CorrectionStrategy.from_tag(args.strategy),
        FidelityConvention.from_tag(args.convention),
    )
    if args.format == "csv":
        text = _teleport_csv(report)
    elif args.format == "json":
        text = _teleport_json(args, report)
    else:
        text = _teleport_table(args, report)
    _emit(text, args.out, f"wrote teleport report to {args.out}")
    return 0


def cmd_sweep(args) -> int:
    if args.panel is not None:
        grid = panel_preset(args.panel)
    else:
        grid = SweepGrid()
    overrides = {}
    if args.theta_points is not None:
        overrides["theta_points"] = args.theta_points
    if args.alpha_points is not None:
        overrides["alpha_points"] = args.alpha_points
    if args.ndelta_values is not None:
        overrides["ndelta_values"] = args.ndelta_values
    if args.strategy is not None:
        overrides["strategy"] = CorrectionStrategy.from_tag(args.strategy)
    overrides["convention"] = FidelityConvention.from_tag(args.convention)
    try:
        grid = SweepGrid(
            **{
                **{f: getattr(grid, f) for f in SweepGrid.__dataclass_fields__},
                **overrides,
            }
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows = run_sweep(grid)
    try:
        count = write_csv(rows, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fids = [r.fidelity for r in rows]
    print(
        f"wrote {count} rows to {args.out} "
        f"(fidelity min {min(fids):.12g}, max {max(fids):.12g})"
    )
    return 0


def cmd_table1(args) -> int:
    deviation = cross_check_reference(
        args.theta,
        args.ndelta,
        InputState.from_alpha1(args.alpha, args.beta_phase),
    )
    status = "PASS" if deviation <= args.tolerance else "FAIL"
    print(
        f"max deviation {deviation:.6e} (tolerance {args.tolerance:.1e}): {status}"
    )
    return 0 if status == "PASS" else 1


def cmd_verify(args) -> int:
    results = verify_mod.run_all(args.seed)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    failed = [r for r in results if not r.passed]
    print(
        f"{len(results) - len(failed)}/{len(results)} checks passed (seed {args.seed})"
    )
    return 1 if failed else 0


def main(argv=None) -> int:
    args = parse_args(argv if argv is not None else sys.argv[1:])
    handler = {
        "teleport": cmd_teleport,
        "sweep": cmd_sweep,
        "table1": cmd_table1,
        "verify": cmd_verify,
    }[args.subcommand]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
