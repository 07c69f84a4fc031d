import argparse
import sys
from typing import List, Optional

from duality_lab.common.errors import ConfigError
from duality_lab.common.logger import Logger
from duality_lab.run_config import CASES_KEY, COMMAND_KEY, Command, OutputFormat, RunConfig, load_config_file
from duality_lab.report_writer import write_reports
from duality_lab.suites import run_suites
from duality_lab.verification.cases_catalog import list_cases

logger = Logger("duality_executor")

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# flag destination -> run config key, the file keys mirror the flag names
FLAG_KEYS = {
    "all_checks": "all", "c": "c", "k": "k", "j": "j", "phi": "phi", "trunc": "trunc", "maxdeg": "maxdeg",
    "grid": "grid", "tolerance": "tolerance", "t": "t", "dt": "dt", "trials": "trials", "seed": "seed",
    "output_format": "format", "output": "output", "workers": "workers", "controls": "controls",
    "richardson": "richardson",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="duality-lab",
                                     description="Verify Lie-algebraic stochastic dualities and simulate them")
    parser.add_argument("command", nargs="?", choices=[c.value for c in Command], help="Suite to run")
    parser.add_argument("-cp", "--config-path", help="Path to a flat JSON or YAML run config")
    parser.add_argument("--case", dest="cases", action="append", help="Case to run, repeatable")
    parser.add_argument("--all", dest="all_checks", action="store_true", default=None,
                        help="Include representation and generator checks in verify-algebra")
    parser.add_argument("--c", help="Rational parameter c, e.g. 3/4")
    parser.add_argument("--k", help="Comma separated rational k per site")
    parser.add_argument("--j", help="Comma separated integer j per site")
    parser.add_argument("--phi", type=float, help="Angle in (0, pi)")
    parser.add_argument("--trunc", type=int, help="Sequence truncation, doubles as the duality grid")
    parser.add_argument("--maxdeg", type=int, help="Polynomial degree bound")
    parser.add_argument("--grid", type=int, help="Duality grid size")
    parser.add_argument("--tolerance", type=float, help="Tolerance for deterministic floating point checks")
    parser.add_argument("--t", type=float, help="Simulation time")
    parser.add_argument("--dt", type=float, help="Euler-Maruyama step")
    parser.add_argument("--trials", type=int, help="Monte Carlo trajectories per side")
    parser.add_argument("--seed", type=int, help="Monte Carlo seed")
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        help="Report format")
    parser.add_argument("--output", help="Report path, stdout when missing")
    parser.add_argument("--workers", type=int, help="Worker threads, capped by DUALITY_LAB_THREADS")
    parser.add_argument("--controls", action=argparse.BooleanOptionalAction, default=None,
                        help="Run negative controls next to the selected cases")
    parser.add_argument("--richardson", action=argparse.BooleanOptionalAction, default=None,
                        help="Estimate the Euler step bias for diffusion sides")
    parser.add_argument("--list-cases", action="store_true", help="Print the case catalog and exit")
    return parser


def merge_config(args: argparse.Namespace) -> dict:
    """File values first, flags given on the command line override them"""
    config = load_config_file(args.config_path) if args.config_path else {}
    if "cases" in config:
        config[CASES_KEY] = config.pop("cases")
    if args.command is not None:
        config[COMMAND_KEY] = args.command
    if args.cases:
        config[CASES_KEY] = args.cases
    for dest, key in FLAG_KEYS.items():
        value = getattr(args, dest)
        if value is not None:
            config[key] = value
    if COMMAND_KEY not in config:
        raise ConfigError("No command given on the command line or in the run config")
    return config


def print_cases() -> None:
    for entry in list_cases():
        sys.stdout.write(f"{entry['kind']}\t{entry['name']}\t{entry['anchor']}\n")
    sys.stdout.flush()


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_cases:
        print_cases()
        return EXIT_PASSED
    try:
        config = RunConfig.create_run_config(merge_config(args))
    except ConfigError as e:
        logger.error(str(e))
        return EXIT_USAGE

    logger.info(f"Run started [command: {config.command.value}, cases: {config.cases or 'all'}]")
    reports = run_suites(config)
    try:
        write_reports(reports, config.output_format, config.output)
    except ConfigError as e:
        logger.error(str(e))
        return EXIT_USAGE

    failed = [report for report in reports if not report.passed()]
    if failed:
        logger.error(f"Run failed [records: {len(reports)}, failed: {[report.case for report in failed]}]")
        return EXIT_FAILED
    logger.info(f"Run passed [records: {len(reports)}]")
    return EXIT_PASSED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
