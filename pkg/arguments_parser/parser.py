import argparse
from typing import Optional, Sequence

import rich_argparse

import arguments_parser.help_messages as help_messages

DEFAULT_SETTINGS_PATH = "settings.env"
DEFAULT_LEVELS = 3

INIT_CHOICES = ("data_extension", "zeros")

# ------------- Arguments name for convenience
command_arg_name = "command"
system_arg_name = "system"
samples_arg_name = "samples"
tol_arg_name = "tol"
max_iter_arg_name = "max_iter"
levels_arg_name = "levels"
output_arg_name = "output"
report_arg_name = "report"
delta_tol_factor_arg_name = "delta_tol_factor"
json_arg_name = "json"
skip_checks_arg_name = "skip_checks"
init_arg_name = "init"
progress_arg_name = "progress"
candidate_arg_name = "candidate"
reference_arg_name = "reference"
halfwidth_arg_name = "halfwidth"
points_arg_name = "points"
u_radius_arg_name = "u_radius"
settings_arg_name = "settings"
verbose_arg_name = "verbose"


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(system_arg_name, type=str, metavar="system_file", help=help_messages.HELP_MSG_SYSTEM)
    common.add_argument(
        f"--{json_arg_name}", action="store_true", help=help_messages.HELP_MSG_JSON
    )
    common.add_argument(
        f"--{report_arg_name}", type=str, metavar="file", help=help_messages.HELP_MSG_REPORT
    )
    common.add_argument(
        f"--{settings_arg_name}",
        type=str,
        metavar="file",
        default=DEFAULT_SETTINGS_PATH,
        help=help_messages.HELP_MSG_SETTINGS,
    )
    common.add_argument(
        f"-{verbose_arg_name[0]}",
        f"--{verbose_arg_name}",
        action="count",
        default=0,
        help=help_messages.HELP_MSG_VERBOSE,
    )
    common.add_argument(
        f"--{tol_arg_name}", type=float, metavar="value", help=help_messages.HELP_MSG_TOL
    )
    return common


def _sampling_arguments() -> argparse.ArgumentParser:
    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument(
        f"--{samples_arg_name}", type=int, metavar="count", help=help_messages.HELP_MSG_SAMPLES
    )
    sampling.add_argument(
        _flag(u_radius_arg_name), type=float, metavar="value", help=help_messages.HELP_MSG_U_RADIUS
    )
    return sampling


def _grid_arguments() -> argparse.ArgumentParser:
    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument(
        f"--{halfwidth_arg_name}", type=float, nargs="+", metavar="h", help=help_messages.HELP_MSG_HALFWIDTH
    )
    grid.add_argument(
        f"--{points_arg_name}", type=int, nargs="+", metavar="m", help=help_messages.HELP_MSG_POINTS
    )
    grid.add_argument(
        _flag(max_iter_arg_name), type=int, metavar="count", help=help_messages.HELP_MSG_MAX_ITER
    )
    grid.add_argument(
        f"--{init_arg_name}", type=str, choices=INIT_CHOICES, help=help_messages.HELP_MSG_INIT
    )
    grid.add_argument(
        f"--{progress_arg_name}", action="store_true", help=help_messages.HELP_MSG_PROGRESS
    )
    return grid


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darboux",
        usage="%(prog)s {check,solve,verify,convergence} system_file [options]",
        formatter_class=rich_argparse.RawTextRichHelpFormatter,
        description=help_messages.PROGRAM_DESCRIPTION,
    )
    commands = parser.add_subparsers(dest=command_arg_name, required=True, metavar="command")
    common, sampling, grid = _common_arguments(), _sampling_arguments(), _grid_arguments()

    commands.add_parser(
        "check",
        parents=[common, sampling],
        formatter_class=rich_argparse.RawTextRichHelpFormatter,
        help=help_messages.HELP_MSG_CHECK,
    )

    solve = commands.add_parser(
        "solve",
        parents=[common, sampling, grid],
        formatter_class=rich_argparse.RawTextRichHelpFormatter,
        help=help_messages.HELP_MSG_SOLVE,
    )
    solve.add_argument(
        f"-{output_arg_name[0]}", f"--{output_arg_name}", type=str, metavar="file", help=help_messages.HELP_MSG_OUTPUT
    )
    solve.add_argument(
        _flag(delta_tol_factor_arg_name), type=float, metavar="factor", help=help_messages.HELP_MSG_DELTA_TOL_FACTOR
    )
    solve.add_argument(
        _flag(skip_checks_arg_name), action="store_true", help=help_messages.HELP_MSG_SKIP_CHECKS
    )
    solve.add_argument(
        f"--{reference_arg_name}", type=str, metavar="file", help=help_messages.HELP_MSG_REFERENCE
    )

    verify = commands.add_parser(
        "verify",
        parents=[common],
        formatter_class=rich_argparse.RawTextRichHelpFormatter,
        help=help_messages.HELP_MSG_VERIFY,
    )
    verify.add_argument(
        f"--{candidate_arg_name}", type=str, metavar="file", required=True, help=help_messages.HELP_MSG_CANDIDATE
    )
    verify.add_argument(
        f"--{samples_arg_name}", type=int, metavar="count", help=help_messages.HELP_MSG_SAMPLES
    )

    convergence = commands.add_parser(
        "convergence",
        parents=[common, grid],
        formatter_class=rich_argparse.RawTextRichHelpFormatter,
        help=help_messages.HELP_MSG_CONVERGENCE,
    )
    convergence.add_argument(
        f"--{levels_arg_name}", type=int, metavar="count", default=DEFAULT_LEVELS, help=help_messages.HELP_MSG_LEVELS
    )
    convergence.add_argument(
        f"--{reference_arg_name}", type=str, metavar="file", required=True, help=help_messages.HELP_MSG_REFERENCE
    )
    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> dict:
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    if args.get(levels_arg_name) is not None and args[levels_arg_name] < DEFAULT_LEVELS:
        parser.error(f"--levels must be at least {DEFAULT_LEVELS}")
    return args


def get_command(args: dict) -> str:
    return args[command_arg_name]


def get_system_path(args: dict) -> str:
    return args[system_arg_name]


def get_verbosity(args: dict) -> int:
    return args[verbose_arg_name]


def wants_json(args: dict) -> bool:
    return args[json_arg_name]


def get_report_path(args: dict) -> Optional[str]:
    return args[report_arg_name]


def get_output_path(args: dict) -> Optional[str]:
    return args.get(output_arg_name)


def get_candidate_path(args: dict) -> Optional[str]:
    return args.get(candidate_arg_name)


def get_reference_path(args: dict) -> Optional[str]:
    return args.get(reference_arg_name)


def get_levels(args: dict) -> int:
    return args.get(levels_arg_name) or DEFAULT_LEVELS


def skip_checks(args: dict) -> bool:
    return args.get(skip_checks_arg_name, False)


def show_progress(args: dict) -> bool:
    return args.get(progress_arg_name, False)
