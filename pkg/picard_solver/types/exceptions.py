from typing import Mapping, Optional, Sequence, Tuple

from expression_dsl.types.exceptions import DarbouxError
from picard_solver.types import exception_reasons


class SolverError(DarbouxError):
    pass


class PicardConvergenceError(SolverError):
    def __init__(
        self,
        iterations: int,
        last_update: float,
        history: Sequence[float],
        tol: float,
        suspected_lipschitz_radius: Optional[float] = None,
    ):
        self.iterations = iterations
        self.last_update = last_update
        self.history = tuple(history)
        self.suspected_lipschitz_radius = suspected_lipschitz_radius

        if suspected_lipschitz_radius is not None and suspected_lipschitz_radius >= 1:
            hint = exception_reasons.ContractionHint.format(product=suspected_lipschitz_radius)
        else:
            hint = exception_reasons.NoContractionHint
        super().__init__(
            exception_reasons.NoConvergence.format(
                iterations=iterations, last_update=last_update, tol=tol, hint=hint
            )
        )


class PicardDivergenceError(SolverError):
    def __init__(self, iterations: int, history: Sequence[float], count: int):
        self.iterations = iterations
        self.history = tuple(history)
        super().__init__(
            exception_reasons.Divergence.format(
                count=count,
                updates=", ".join(f"{v:.3e}" for v in self.history[-(count + 1) :]),
            )
        )


class NodeEvaluationError(SolverError):
    def __init__(self, unknown: str, axis: int, cause: Exception):
        self.unknown = unknown
        self.axis = axis
        self.cause = cause
        super().__init__(
            exception_reasons.NodeEvaluation.format(
                unknown=unknown, axis=axis, cause=str(cause).strip()
            )
        )


class SamplingError(DarbouxError):
    def __init__(self, point: Mapping[str, float], cause: Exception):
        self.point = dict(point)
        self.cause = cause
        formatted = "{" + ", ".join(f"{k}={v:.6g}" for k, v in self.point.items()) + "}"
        super().__init__(
            exception_reasons.Sampling.format(point=formatted, cause=str(cause).strip())
        )


class DataShapeError(SolverError):
    def __init__(self, component: str, shape: Tuple[int, ...], expected: Tuple[int, ...]):
        self.component = component
        self.shape = tuple(shape)
        self.expected = tuple(expected)
        super().__init__(
            exception_reasons.DataShape.format(component=component, shape=self.shape, expected=self.expected)
        )


class SolveCancelledError(SolverError):
    """Raised inside a solve whose stop event was set by a failing sibling."""

    def __init__(self, iterations: int):
        self.iterations = iterations
        super().__init__(exception_reasons.Cancelled.format(iterations=iterations))


class GridSpecError(DarbouxError, ValueError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(exception_reasons.GridSpec.format(reason=reason))
