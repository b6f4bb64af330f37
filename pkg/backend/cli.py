"""
LieVerify Backend - Command Line Module
Batch verification front-end: lemma selection, sizes, seeds and report formats
"""

import argparse
import json
import logging
import sys

from .config import Config, get_config, set_config
from .errors import DomainError
from .utils import setup_logging
from .verify import LEMMAS, report_document, run_verify


logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser():
    """Argument parser with the verify and list subcommands"""
    parser = argparse.ArgumentParser(
        prog="lieverify",
        description="Exact verification of the algebraic lemmas behind rank-one and rank-two conformal actions",
    )
    parser.add_argument("--config", help="JSON configuration file overlaying the defaults")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Logging level (logs go to stderr and the log file)")
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser("verify", help="Run lemma checks")
    verify.add_argument("lemmas", nargs="*", default=["all"],
                        help="'all' or lemma ids (see the list command)")
    verify.add_argument("--max-n", type=int, default=None, help="Largest size parameter (>= 3)")
    verify.add_argument("--seed", type=int, default=None, help="Seed for the randomized harnesses")
    verify.add_argument("--format", choices=["text", "json"], default="text", dest="output_format")
    verify.add_argument("--jobs", type=int, default=None, help="Worker threads for independent checks")
    verify.add_argument("--timings", action="store_true", help="Include durations in JSON output")
    verify.add_argument("--progress", action="store_true", help="Show progress bars on stderr")

    sub.add_parser("list", help="List lemma ids")
    return parser


def _load_config(args):
    config = Config(args.config) if args.config else get_config()
    if args.log_level:
        config.LOG_LEVEL = args.log_level
    set_config(config)
    return config


def cmd_list(out):
    for lemma in LEMMAS:
        print(lemma, file=out)
    return EXIT_PASS


def cmd_verify(args, config, out, err):
    if getattr(args, "progress", False):
        config.SHOW_PROGRESS = True
    max_n = config.DEFAULT_MAX_N if args.max_n is None else args.max_n
    seed = config.DEFAULT_SEED if args.seed is None else args.seed
    jobs = config.JOBS if args.jobs is None else args.jobs
    if max_n < 3:
        print(f"error: --max-n must be at least 3, got {max_n}", file=err)
        return EXIT_USAGE
    if jobs <= 0:
        print(f"error: --jobs must be positive, got {jobs}", file=err)
        return EXIT_USAGE

    try:
        reports = run_verify(args.lemmas, max_n=max_n, seed=seed, config=config, jobs=jobs)
    except DomainError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE

    if args.output_format == "json":
        document = report_document(reports, max_n, seed, config,
                                   include_timing=args.timings or config.REPORT_TIMINGS)
        print(json.dumps(document, indent=2), file=out)
    else:
        for report in reports:
            print(report.to_text(), file=out)
            for item in report.counterexamples[:5]:
                print(f"    counterexample: {item}", file=out)

    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def main(argv=None, out=None, err=None):
    """
    Entry point of the lieverify command

    Returns:
        int: 0 when every selected check passes, 1 on a failure, 2 on a usage error
    """
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    config = _load_config(args)
    errors = config.validate()
    if errors:
        for message in errors:
            print(f"error: {message}", file=err)
        return EXIT_USAGE
    setup_logging(config)

    if args.command == "list":
        return cmd_list(out)
    if args.command == "verify":
        return cmd_verify(args, config, out, err)
    parser.print_help(err)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
