from typing import Tuple

from darboux_solver.types import exception_reasons
from picard_solver.types.exceptions import SolverError


def describe_path(path: Tuple[int, ...]) -> str:
    if not path:
        return "the top-level system"
    return " / ".join(f"system {label}" for label in path)


class SubsystemError(SolverError):
    def __init__(self, path: Tuple[int, ...], cause: Exception):
        self.path = tuple(path)
        self.cause = cause
        super().__init__(
            exception_reasons.Subsystem.format(path=describe_path(self.path), cause=str(cause).rstrip())
        )


class MissingSubsolutionError(SolverError):
    def __init__(self, axis: int, unknown: str):
        self.axis = axis
        self.unknown = unknown
        super().__init__(exception_reasons.MissingSubsolution.format(axis=axis, unknown=unknown))
