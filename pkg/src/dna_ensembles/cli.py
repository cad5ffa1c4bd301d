"""Command-line entry point: ``dna-ensembles <command> --config C ...``.

Exit codes: 0 on success, 1 on runtime failures, 2 on config or usage
errors.
"""

__docformat__ = "google"

import argparse
import sys

from . import pipeline
from .config import ConfigError, load_config, resolve_output
from .ensemble import KIND_ORDER
from .log import configure_logging, logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so :func:`main` owns the exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def build_parser():
    parser = _Parser(
        prog="dna-ensembles",
        description="Train decorrelated and frequency-partitioned ensembles and attack them",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug output")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--config", help="JSON run config (defaults when omitted)")
        return sub

    generate = command("generate-data", "Write the dataset manifest, signals and split")
    generate.add_argument("--out", help="Data directory (default: <output_dir>/data)")

    train = command("train", "Train the three arms of one ensemble kind")
    train.add_argument("--kind", required=True, choices=[k.value for k in KIND_ORDER])
    train.add_argument("--data", help="Data directory (default: <output_dir>/data)")
    train.add_argument("--out", help="Ensemble directory (default: <output_dir>/ensembles)")
    train.add_argument("--force", action="store_true", help="Overwrite existing arm files")
    train.add_argument(
        "--from-arm",
        type=int,
        default=0,
        choices=(0, 1, 2),
        help="Retrain arms from this index on, reusing the earlier arms on disk",
    )

    attack = command("attack", "Craft attacked test sets for every grid cell")
    attack.add_argument("--ensemble-dir", help="Ensemble directory (default: <output_dir>/ensembles)")
    attack.add_argument("--data", help="Data directory (default: <output_dir>/data)")
    attack.add_argument("--out", help="Attack directory (default: <output_dir>/attacks)")

    evaluate = command("evaluate", "Score every trained ensemble and write the reports")
    evaluate.add_argument("--ensemble-dir", help="Ensemble directory (default: <output_dir>/ensembles)")
    evaluate.add_argument("--attacks", help="Attack directory (default: <output_dir>/attacks)")
    evaluate.add_argument("--data", help="Data directory (default: <output_dir>/data)")
    evaluate.add_argument("--out", help="Report CSV (default: <output_dir>/report.csv)")
    return parser


def _path(value, cfg, *default):
    return resolve_output(value) if value else cfg.output_path(*default)


def _run(args):
    cfg = load_config(args.config)
    if args.command == "generate-data":
        pipeline.generate_data(cfg, _path(args.out, cfg, "data"))
    elif args.command == "train":
        pipeline.train_kind(
            cfg,
            args.kind,
            _path(args.data, cfg, "data"),
            _path(args.out, cfg, "ensembles"),
            force=args.force,
            from_arm=args.from_arm,
        )
    elif args.command == "attack":
        pipeline.attack_grid(
            cfg,
            _path(args.ensemble_dir, cfg, "ensembles"),
            _path(args.data, cfg, "data"),
            _path(args.out, cfg, "attacks"),
        )
    elif args.command == "evaluate":
        pipeline.evaluate_all(
            cfg,
            _path(args.ensemble_dir, cfg, "ensembles"),
            _path(args.attacks, cfg, "attacks"),
            _path(args.data, cfg, "data"),
            _path(args.out, cfg, "report.csv"),
        )


def main(argv=None):
    """Parse ``argv``, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"dna-ensembles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(args.verbose, args.quiet)

    try:
        _run(args)
    except ConfigError as exc:
        print(f"dna-ensembles: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        logger().debug("Command failed", exc_info=True)
        print(f"dna-ensembles: {args.command} failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK
