"""
Run settings, resolved per key in this order: command-line flag, section of
the system file, settings.env, built-in default.
"""

import logging
import os
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Tuple

from dotenv import dotenv_values

import arguments_parser.parser as arg_parser
from darboux_solver.solver import DEFAULT_DELTA_TOL_FACTOR
from darboux_system.types.spec_file_types import FileSettings
from integrability import checker
from picard_solver import picard
from picard_solver.types.grid_types import InitMode
from verification_harness.types.exceptions import InvalidSettingError, MissingSettingError

LOG = logging.getLogger(__name__)

ENV_SAMPLES = "DARBOUX_SAMPLES"
ENV_CHECK_TOL = "DARBOUX_CHECK_TOL"
ENV_PICARD_TOL = "DARBOUX_PICARD_TOL"
ENV_MAX_ITER = "DARBOUX_MAX_ITER"
ENV_DELTA_TOL_FACTOR = "DARBOUX_DELTA_TOL_FACTOR"
ENV_U_RADIUS = "DARBOUX_U_RADIUS"

# commands where --tol means the integrability / candidate tolerance
CHECK_TOL_COMMANDS = ("check", "verify")


@dataclass(frozen=True)
class RunSettings:
    samples: int
    check_tol: float
    picard_tol: float
    max_iter: int
    delta_tol_factor: float
    u_radius: float
    init: InitMode
    x_radius: Optional[Tuple[float, ...]] = None
    halfwidth: Optional[Tuple[float, ...]] = None
    points: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        positive = {
            "sample count": self.samples,
            "integrability tolerance": self.check_tol,
            "Picard tolerance": self.picard_tol,
            "iteration limit": self.max_iter,
            "Delta tolerance factor": self.delta_tol_factor,
            "U-radius": self.u_radius,
        }
        for name, value in positive.items():
            if not value > 0:
                raise InvalidSettingError(name, value, "must be positive")
        if self.x_radius is not None and not all(r > 0 for r in self.x_radius):
            raise InvalidSettingError("x-radius", self.x_radius, "must be positive on every axis")

    def require_grid(self):
        if self.halfwidth is None:
            raise MissingSettingError("the grid half-width", "--halfwidth", "solve")
        if self.points is None:
            raise MissingSettingError("the grid point count", "--points", "solve")


def load_env_settings(path: str) -> Mapping[str, Optional[str]]:
    if not os.path.isfile(path):
        return {}
    values = dotenv_values(path)
    LOG.debug(f"Read {len(values)} default(s) from {path}")
    return values


def _first(convert: Callable, *candidates):
    for value in candidates:
        if value is not None and value != "":
            return convert(value)
    return None


def _per_axis(values: Optional[Sequence], n: int, name: str) -> Optional[Tuple]:
    if values is None:
        return None
    values = tuple(values)
    if len(values) == 1:
        return values * n
    if len(values) != n:
        raise MissingSettingError(f"{name} for each of the {n} axes", f"--{name}", "solve")
    return values


def resolve_settings(
    args: dict, file_settings: FileSettings, env: Mapping[str, Optional[str]], n: int
) -> RunSettings:
    command = arg_parser.get_command(args)
    flag_tol = args.get(arg_parser.tol_arg_name)
    check_flag_tol = flag_tol if command in CHECK_TOL_COMMANDS else None
    picard_flag_tol = None if command in CHECK_TOL_COMMANDS else flag_tol

    init = _first(str, args.get(arg_parser.init_arg_name), file_settings.init) or InitMode.data_extension.name
    halfwidth = _first(tuple, args.get(arg_parser.halfwidth_arg_name), file_settings.halfwidth)
    points = _first(tuple, args.get(arg_parser.points_arg_name), file_settings.points)

    return RunSettings(
        samples=_first(
            int, args.get(arg_parser.samples_arg_name), file_settings.samples, env.get(ENV_SAMPLES), checker.DEFAULT_SAMPLES
        ),
        check_tol=_first(float, check_flag_tol, file_settings.check_tol, env.get(ENV_CHECK_TOL), checker.DEFAULT_TOL),
        picard_tol=_first(float, picard_flag_tol, file_settings.tol, env.get(ENV_PICARD_TOL), picard.DEFAULT_TOL),
        max_iter=_first(
            int, args.get(arg_parser.max_iter_arg_name), file_settings.max_iter, env.get(ENV_MAX_ITER), picard.DEFAULT_MAX_ITER
        ),
        delta_tol_factor=_first(
            float,
            args.get(arg_parser.delta_tol_factor_arg_name),
            env.get(ENV_DELTA_TOL_FACTOR),
            DEFAULT_DELTA_TOL_FACTOR,
        ),
        u_radius=_first(
            float, args.get(arg_parser.u_radius_arg_name), file_settings.u_radius, env.get(ENV_U_RADIUS), checker.DEFAULT_U_RADIUS
        ),
        init=InitMode.from_str(init),
        # the integrability box defaults to the solve box
        x_radius=_per_axis(file_settings.x_radius or halfwidth, n, "halfwidth"),
        halfwidth=_per_axis(halfwidth, n, "halfwidth"),
        points=_per_axis(points, n, "points"),
    )
