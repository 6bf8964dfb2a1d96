from typing import Sequence

from darboux_system.types import exception_reasons
from expression_dsl.types.exceptions import DarbouxError


class SystemSpecError(DarbouxError):
    pass


class SpecFileError(SystemSpecError):
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(
            exception_reasons.SpecFileLine.format(path=path, line=line, message=message)
        )


class SystemValidationError(SystemSpecError):
    def __init__(self, violations: Sequence):
        self.violations = tuple(violations)
        super().__init__(
            exception_reasons.ValidationFailed.format(
                count=len(self.violations),
                violations="\n".join(f"      - {v}" for v in self.violations),
            )
        )


class EmptyRestrictionError(SystemSpecError):
    def __init__(self, axis: int):
        self.axis = axis
        super().__init__(exception_reasons.EmptyRestriction.format(axis=axis))


class AxisNotInIndexError(SystemSpecError):
    def __init__(self, axis: int, index):
        self.axis = axis
        self.index = index
        super().__init__(exception_reasons.AxisNotInIndex.format(axis=axis, index=index))


class IndexNotInSystemError(SystemSpecError):
    def __init__(self, index):
        self.index = index
        super().__init__(exception_reasons.IndexNotInSystem.format(index=index))
