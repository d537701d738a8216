"""Command line entry point: ``dilatia <prep|dephasing|damping|decompose>``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from .__version import __version__
from .config import EXPERIMENTS, load_config
from .errors import ConfigError, DilatiaError
from .experiments import run_experiment

log = logging.getLogger(__name__)


def _shot_list(text: str) -> list[int]:
    try:
        shots = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not shots or any(n < 1 for n in shots):
        raise argparse.ArgumentTypeError(f"shot counts must be positive, got {text!r}")
    return shots


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dilatia", description="One-ancilla SVD dilation experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("experiment", choices=EXPERIMENTS, help="Experiment to run.")
    parser.add_argument("--config", help="JSON file with ExperimentConfig parameters.")
    parser.add_argument("--seed", type=int, help="Random seed.")
    parser.add_argument("--shots", type=_shot_list, help="Comma-separated shot counts per tomography basis.")
    parser.add_argument("--exact", action="store_const", const="exact", dest="mode", help="Use exact probabilities instead of shots.")
    parser.add_argument("--out", dest="output_dir", help="Output directory.")
    parser.add_argument("--epsilon", type=float, help="Walsh truncation threshold for approximate synthesis.")
    parser.add_argument("--qasm", action="store_const", const=True, help="Write OpenQASM 2.0 files (decompose).")
    parser.add_argument("--input", help="Matrix text file or channel JSON (decompose).")
    parser.add_argument("--auto-rescale", action="store_const", const=True, dest="auto_rescale", help="Rescale non-contractions.")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging verbosity.")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run one experiment and return the process exit code.

    0 on success, 2 for configuration errors, 3 for numerical failures and
    4 when an operator is not a contraction.
    """
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as exc:
        print(f"dilatia: error: {exc}", file=sys.stderr)  # noqa: T201
        return exc.exit_code
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    overrides = {
        "seed": args.seed,
        "shots": args.shots,
        "mode": args.mode,
        "output_dir": args.output_dir,
        "epsilon": args.epsilon,
        "qasm": args.qasm,
        "input": args.input,
        "auto_rescale": args.auto_rescale,
    }
    try:
        cfg = load_config(args.experiment, args.config, overrides)
        report = run_experiment(cfg)
    except DilatiaError as exc:
        log.debug("Experiment failed", exc_info=True)
        print(f"dilatia: {type(exc).__name__}: {exc}", file=sys.stderr)  # noqa: T201
        return exc.exit_code
    print(report.summary())  # noqa: T201
    for path in report.files:
        print(f"wrote {path}")  # noqa: T201
    return 0


if __name__ == "__main__":
    sys.exit(main())
