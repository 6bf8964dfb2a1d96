from typing import Sequence, Tuple

from expression_dsl.types.exceptions import DarbouxError
from picard_solver.types.exceptions import SolverError
from verification_harness.types import exception_reasons


class HarnessError(DarbouxError):
    pass


class CandidateError(HarnessError):
    @classmethod
    def components(cls, kind: str, path: str, missing: Sequence[str], unexpected: Sequence[str]):
        return cls(
            exception_reasons.CandidateComponents.format(
                kind=kind,
                path=path,
                missing=", ".join(missing) or "-",
                unexpected=", ".join(unexpected) or "-",
            )
        )

    @classmethod
    def variables(cls, kind: str, component: str, n: int, names: Sequence[str]):
        return cls(
            exception_reasons.CandidateVariables.format(
                kind=kind, component=component, n=n, names=", ".join(sorted(names))
            )
        )


class SolutionFileError(HarnessError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(exception_reasons.SolutionFile.format(path=path, message=message))


class MissingSettingError(HarnessError):
    def __init__(self, name: str, flag: str, section: str):
        self.name = name
        super().__init__(
            exception_reasons.MissingSetting.format(name=name, flag=flag, section=section)
        )


class InvalidSettingError(HarnessError):
    def __init__(self, name: str, value, requirement: str):
        self.name = name
        self.value = value
        super().__init__(
            exception_reasons.InvalidSetting.format(name=name, value=value, requirement=requirement)
        )


class ConvergenceStudyError(SolverError):
    """A solve failed at one refinement level; ``level`` counts from 0."""

    def __init__(self, level: int, points: Tuple[int, ...], cause: Exception):
        self.level = level
        self.points = tuple(points)
        self.cause = cause
        super().__init__(
            exception_reasons.ConvergenceLevel.format(
                level=level,
                points="x".join(str(m) for m in points),
                cause=str(cause).rstrip(),
            )
        )
