"""
Command-line entry point.

Subcommands:
- teleport: run one input qubit through a channel and print the JSON report
- sweep: pipeline vs closed-form distortion over a (p1 or r, |y|, arg y) grid
- figures: write fig1.csv ... fig5.csv
- verify: run every verification suite; exit 1 if an asserted suite fails

Exit codes: 0 success, 1 internal error or failed verification, 2 invalid
configuration, channel text or parameters.
"""
import argparse
import math
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import channels, figures, metrics, serializer, teleport, verify
from .channels import ChannelSpec
from .config import FORMATS, Config, RunConfig, build_run_config, load_yaml
from .density import QubitState
from .exceptions import (
    ChannelSpecError,
    ConfigError,
    InvalidParamsError,
    InvalidStateError,
    MixportError,
    OutOfRangeError,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

_INVALID_INPUT = (ConfigError, ChannelSpecError, InvalidParamsError, InvalidStateError, OutOfRangeError)

# Closed-form distortions exist for these families.
_CLOSED_FORM_FAMILIES = ("meps", "mems2", "mems3", "mems4", "werner")

_SWEEP_RANGES: Dict[str, Tuple[float, float]] = {
    "mems2": (0.5, 1.0),
    "mems3": (1.0 / 3.0, 0.5),
    "mems4": (0.25, 1.0),
    "werner": (0.0, 1.0),
}
_SWEEP_POINTS = 21


def _float_list(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _input_triple(text: str) -> Tuple[float, float, float]:
    values = _float_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected x,re_y,im_y, got '{text}'")
    return values


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixport",
        description="Teleportation through mixed two-qubit channels",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  mixport teleport --channel meps --input 0.5,0.3,0
  mixport teleport --channel mems4:p1=0.7 --input 0.5,0.3,0
  mixport sweep --channel mems2 --params 0.6,0.8 --abs-y 0,0.1,0.2 --format csv
  mixport figures --output figures/
  mixport verify --samples 5000
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML run file; flags given here take precedence")
    common.add_argument("--seed", type=int, help=f"Random seed (default: {Config.default_seed})")
    common.add_argument("--output", help="Output path (default: stdout; directory for figures)")
    common.add_argument("--format", choices=FORMATS, help="Report format (default: json)")

    cmd = subparsers.add_parser("teleport", parents=[common], help="Teleport one input qubit")
    cmd.add_argument("--channel", help="Channel text, e.g. mems4:p1=0.7 (default: meps)")
    cmd.add_argument("--input", type=_input_triple, help="Input qubit as x,re_y,im_y (default: 0.5,0,0)")

    cmd = subparsers.add_parser("sweep", parents=[common], help="Distortion sweep against the closed forms")
    cmd.add_argument("--channel", help="Family name: meps, mems2, mems3, mems4 or werner")
    cmd.add_argument("--params", type=_float_list, help="p1 (MEMS) or r (Werner) values")
    cmd.add_argument("--abs-y", dest="abs_y", type=_float_list, help="|y| values")
    cmd.add_argument("--phases", type=_float_list, help="arg y values in radians (default: 0)")
    cmd.add_argument("--x", type=float, help="Input population x (default: 0.5)")

    subparsers.add_parser("figures", parents=[common], help="Write the figure CSVs")

    cmd = subparsers.add_parser("verify", parents=[common], help="Run the verification suites")
    cmd.add_argument("--samples", type=int, help=f"Random matrices per property (default: {Config.default_samples})")
    cmd.add_argument("--workers", type=int, help="Threads for the property suites (default: 1)")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    file_values = load_yaml(args.config) if args.config else None
    overrides = {
        key: getattr(args, key, None)
        for key in ("channel", "input", "params", "abs_y", "phases", "x", "seed", "samples", "output", "format", "workers")
    }
    return build_run_config(args.command, file_values, **overrides)


def _emit(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text if text.endswith("\n") else text + "\n")
    print(f"wrote {path}", file=sys.stderr)


def _closed_form_param(spec: ChannelSpec) -> Optional[float]:
    return spec.params[0] if spec.params else None


def teleport_report(state: QubitState, spec: ChannelSpec) -> dict:
    """Outcomes, per-outcome distortion and, for catalog families, the closed-form comparison."""
    run = teleport.run(state, spec)
    rho1 = state.matrix()
    outcomes = []
    for o in run.outcomes:
        entry = {
            "outcome": o.outcome,
            "probability": o.probability,
            "degenerate": o.degenerate,
            "bob_raw": o.bob_raw,
            "bob_corrected": o.bob_corrected,
            "distortion": None if o.degenerate else metrics.hs_distance_sq(rho1, o.bob_corrected),
        }
        if spec.family in _CLOSED_FORM_FAMILIES and not o.degenerate:
            expected = metrics.closed_form(spec.family, o.outcome.branch, state.x, state.y, _closed_form_param(spec))
            entry["closed_form"] = expected
            entry["abs_err"] = abs(entry["distortion"] - expected)
        outcomes.append(entry)
    return {
        "channel": spec.to_text(),
        "in_validity_range": spec.in_validity_range,
        "input": {"x": state.x, "y": state.y},
        "outcomes": outcomes,
        "total_probability": run.total_probability,
        "distortion": metrics.branch_distortions(run),
    }


def cmd_teleport(config: RunConfig) -> int:
    x, re_y, im_y = config.input
    state = QubitState(x, complex(re_y, im_y))
    spec = channels.parse(config.channel)
    _emit(serializer.dumps(teleport_report(state, spec)), config.output)
    return EXIT_OK


def _sweep_grid(config: RunConfig) -> Tuple[Sequence[float], Sequence[float]]:
    if not 0.0 <= config.x <= 1.0:
        raise ConfigError(f"x must lie in [0, 1], got {config.x}")
    params = config.params
    if not params and config.channel not in _SWEEP_RANGES:
        params = (0.0,)
    elif not params:
        lo, hi = _SWEEP_RANGES[config.channel]
        params = [lo + (hi - lo) * i / (_SWEEP_POINTS - 1) for i in range(_SWEEP_POINTS)]
    abs_ys = config.abs_y
    if not abs_ys:
        top = math.sqrt(config.x * (1 - config.x))
        abs_ys = [top * i / (_SWEEP_POINTS - 1) for i in range(_SWEEP_POINTS)]
    return params, abs_ys


def cmd_sweep(config: RunConfig) -> int:
    family = config.channel
    if family not in _CLOSED_FORM_FAMILIES:
        raise ConfigError(f"sweep needs one of {', '.join(_CLOSED_FORM_FAMILIES)}, got '{family}'")
    params, abs_ys = _sweep_grid(config)
    rows = metrics.sweep(family, params, abs_ys, config.phases, config.x)
    if config.format == "csv":
        text = serializer.csv_text(metrics.SWEEP_COLUMNS, [r.as_row() for r in rows])
    else:
        text = serializer.dumps([dict(zip(metrics.SWEEP_COLUMNS, r.as_row())) for r in rows])
    _emit(text, config.output)
    return EXIT_OK


def cmd_figures(config: RunConfig) -> int:
    outdir = config.output or "figures"
    for path in figures.write_figures(outdir):
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    report = verify.run_all(
        seed=config.seed,
        samples=config.samples,
        workers=config.workers,
        progress=lambda name: print(f"running {name}", file=sys.stderr),
    )
    _emit(serializer.dumps(report.as_dict()), config.output)
    if not report.passed:
        print(f"failed: {', '.join(report.failed)}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


_COMMANDS = {
    "teleport": cmd_teleport,
    "sweep": cmd_sweep,
    "figures": cmd_figures,
    "verify": cmd_verify,
}

def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK

    try:
        config = _run_config(args)
        return _COMMANDS[config.command](config)
    except _INVALID_INPUT as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: cannot write {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_FAILED
    except MixportError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except Exception as e:
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED
