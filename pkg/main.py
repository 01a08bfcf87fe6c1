"""
File:           main.py
Created on:     15/10/26, 6:20 pm
"""
from typing import Any, Dict, List, Optional
import argparse
import logging
import sys

from src.cli.run_config import ConfigError, load_config, parse_params
from src.cli.runner import EXIT_ERROR, report_error, run
from src.utils.enum import Command, OutputFormat
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("main")


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """ Usage errors end in a single stderr line and exit code 1 """

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(description="Ultra-hot quantum Otto engine toolkit")
    commands = [command.value for command in Command]
    parser.add_argument("command", nargs="?", choices=commands)
    parser.add_argument("--command", dest="command_flag", choices=commands)
    parser.add_argument("--config", type=str, help="Flat key = value file or .json")
    parser.add_argument("--out", type=str)
    parser.add_argument("--format", choices=[fmt.value for fmt in OutputFormat])
    # Engine
    parser.add_argument("--levels", type=str, help="Comma separated hot levels")
    parser.add_argument("--cold-levels", type=str, help="Comma separated cold levels")
    parser.add_argument("--chi", type=float)
    parser.add_argument("--beta-c", type=float)
    parser.add_argument("--beta-h", type=float)
    parser.add_argument("--T-c", dest="T_c", type=float)
    parser.add_argument("--T-h", dest="T_h", type=float)
    parser.add_argument("--xi", type=float)
    # Constraint
    parser.add_argument("--constraint", type=str)
    parser.add_argument("--preset", type=str)
    parser.add_argument("--param", action="append", default=[], help="name=value, repeatable")
    parser.add_argument("--g0", type=float)
    parser.add_argument("--eta-c", type=float)
    parser.add_argument("--sigma-c", type=float)
    parser.add_argument("--sigma-h", type=float)
    # Sweep
    parser.add_argument("--axis", type=str)
    parser.add_argument("--from", dest="from_", type=float)
    parser.add_argument("--to", type=float)
    parser.add_argument("--points", type=int)
    parser.add_argument("--log", action="store_true", default=None)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--tol", action="append", default=[],
                        help="Tolerance override name=value, e.g. root_rel=1e-13")
    parser.add_argument("--verbose", action="store_true", default=None)
    return parser


def flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """ Flags that were given, keyed like the config file """
    overrides: Dict[str, Any] = {
        "command": args.command_flag or args.command,
        "out": args.out,
        "format": args.format,
        "levels": args.levels,
        "cold_levels": args.cold_levels,
        "chi": args.chi,
        "beta_c": args.beta_c,
        "beta_h": args.beta_h,
        "T_c": args.T_c,
        "T_h": args.T_h,
        "xi": args.xi,
        "constraint": args.constraint,
        "preset": args.preset,
        "g0": args.g0,
        "eta_c": args.eta_c,
        "sigma_c": args.sigma_c,
        "sigma_h": args.sigma_h,
        "axis": args.axis,
        "from": args.from_,
        "to": args.to,
        "points": args.points,
        "log": args.log,
        "workers": args.workers,
        "verbose": args.verbose,
    }
    if args.param:
        overrides["params"] = ",".join(args.param)
    for name, value in parse_params(",".join(args.tol)).items():
        overrides[f"tol_{name}"] = value
    return {key: value for key, value in overrides.items() if value is not None}


def main(argv: Optional[List[str]] = None) -> int:
    """ Main function """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(args.config, flag_overrides(args))
    except UsageError as err:
        report_error("usage", err)
        return EXIT_ERROR
    except ConfigError as err:
        logger.info(f"{err.__class__.__name__}: {err}")
        report_error("config", err)
        return EXIT_ERROR
    if config.verbose:
        LogFacade.set_global_level(logging.DEBUG)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
