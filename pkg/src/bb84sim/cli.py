"""Command-line front end.

Two subcommands: ``run`` executes an experiment and writes its report,
``detect-curve`` sweeps the parity-verification round count and reports
detection rates.  Exit codes: 0 success, 2 invalid configuration,
3 runtime failure.
"""

import argparse
import math
import sys
from pathlib import Path

from .errors import (
    DegenerateAncillaError,
    InvalidConfigError,
    InvalidParamsError,
)
from .harness import (
    EVE_KINDS,
    OUTPUT_FORMATS,
    RESEND_RULES,
    ExperimentConfig,
    curve_to_csv,
    curve_to_json,
    detection_rate_curve,
    run_experiment,
)


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pulses", type=int, default=10_000,
                        help="pulses per session (default %(default)s)")
    parser.add_argument("--sessions", type=int, default=100,
                        help="independent sessions (default %(default)s)")
    parser.add_argument("--efficiency", type=float, default=1.0,
                        help="detector efficiency in (0, 1] (default %(default)s)")
    parser.add_argument("--eve", choices=EVE_KINDS, default="none",
                        help="adversary strategy (default %(default)s)")
    parser.add_argument("--ancilla-angle", type=float, default=math.pi / 6,
                        help="ancilla angle in radians for the indirect-copy "
                             "strategies (default pi/6)")
    parser.add_argument("--resend-rule", choices=RESEND_RULES,
                        default="max-posterior",
                        help="resend rule for indirect-physical "
                             "(default %(default)s)")
    parser.add_argument("--attack-fraction", type=float, default=1.0,
                        help="fraction of pulses the adversary attacks "
                             "(default %(default)s)")
    parser.add_argument("--seed", type=int, default=1,
                        help="64-bit master seed (default %(default)s)")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json",
                        help="report format (default %(default)s)")
    parser.add_argument("--out", default=None,
                        help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bb84sim",
        description="BB84 key-distribution simulator with pluggable "
                    "eavesdropper strategies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment and report it")
    _add_common_options(run)
    run.add_argument("--parity-rounds", type=int, default=0,
                     help="parity verification rounds per session "
                          "(default %(default)s)")
    run.add_argument("--pa-t", type=int, default=None,
                     help="privacy amplification: assumed adversary bits t "
                          "(omit to skip amplification)")
    run.add_argument("--pa-s", type=int, default=None,
                     help="privacy amplification: security margin s")

    curve = sub.add_parser(
        "detect-curve",
        help="detection rate of parity verification vs round count",
    )
    _add_common_options(curve)
    curve.add_argument("--k-values", default="1,2,3,4,5,6,7,8",
                       help="comma-separated parity round counts "
                            "(default %(default)s)")
    curve.add_argument("--force-differ", action="store_true",
                       help="flip one random sifted bit of the receiver "
                            "before verification")
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        n_pulses=args.pulses,
        n_sessions=args.sessions,
        efficiency=args.efficiency,
        parity_rounds=getattr(args, "parity_rounds", 0),
        eve_kind=args.eve,
        ancilla_angle=args.ancilla_angle,
        resend_rule=args.resend_rule,
        attack_fraction=args.attack_fraction,
        pa_leak_bits=getattr(args, "pa_t", None),
        pa_margin_bits=getattr(args, "pa_s", None),
        master_seed=args.seed,
        output_format=args.format,
    )


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command == "run":
            report = run_experiment(config)
            text = (
                report.to_json()
                if config.output_format == "json"
                else report.to_csv()
            )
        else:
            k_values = [int(k) for k in args.k_values.split(",") if k.strip()]
            if not k_values:
                raise InvalidConfigError("--k-values must name at least one k")
            curve = detection_rate_curve(
                config, k_values, force_differ=args.force_differ
            )
            text = (
                curve_to_json(config, curve)
                if config.output_format == "json"
                else curve_to_csv(curve)
            )
    except (InvalidConfigError, InvalidParamsError, DegenerateAncillaError,
            ValueError) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure inside the simulation
        print(f"error: {exc}", file=sys.stderr)
        return 3
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
