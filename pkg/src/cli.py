"""Command-line entry point - parses arguments, configures logging, runs one command."""

import argparse
import logging
import sys

from src.config.settings import RunConfig, Settings
from src.errors import PolypartError
from src.handlers.commands import CommandHandler
from src.reporting.writer import ReportWriter

logger = logging.getLogger(__name__)

COMMANDS = ("count", "mod-table", "verify-filter", "equi-ratio", "asym", "weyl-check", "f-scan", "pi-f", "verify")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command sharing the common flags."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", required=True, help="binom:c0,c1,..., rat:a0,a1,... or cfact:c")
    common.add_argument("--N", type=int, help="largest n to tabulate")
    common.add_argument("--L", type=int, help="Weyl-sum length (weyl-check crossover data)")
    common.add_argument("--h-max", dest="h_max", type=int, help="largest modulus h (weyl-check)")
    common.add_argument("--k", type=int, default=2, help="modulus k (default: 2)")
    common.add_argument("--delta", type=int, default=1, help="δ dividing Π_f (default: 1)")
    common.add_argument("--a", type=int, nargs="+", help="residue(s) a")
    common.add_argument("--x", type=float, help="x in (0, 1/2] for f-scan")
    common.add_argument("--grid", type=int, default=1000, help="f-scan grid size (default: 1000)")
    common.add_argument("--out", help="output file, relative to POLYPART_OUTPUT_DIR (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--store", help="also save the exact table to this file (count, mod-table)")
    common.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="polypart",
        description="Exact counts and numerical checks for partitions into polynomial parts.",
        epilog=CommandHandler.HELP_TEXT,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--env", help="path to a .env file")
    parser.add_argument("--suite", help="verification suite YAML (default: POLYPART_SUITE)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit code (0 ok, 2 validation, 3 failed check)."""
    args = build_parser().parse_args(argv)
    settings = Settings.load(env_path=args.env, suite_path=args.suite)

    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    config = RunConfig.from_namespace(args)
    handler = CommandHandler(settings)
    try:
        output = handler.handle(config)
    except PolypartError as e:
        logger.error(f"{config.command} failed: {e}")
        return e.exit_code

    with ReportWriter(config.out, settings.output_dir) as writer:
        writer.write(output.text)
    if output.exit_code:
        logger.error(f"{config.command} reported a failed check (exit {output.exit_code})")
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
