import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple


@dataclass(frozen=True)
class CandidateReport:
    """
    Object representing how well closed-form expressions solve a system:
    the largest |u_{x_i} - F_i(x; candidate)| over samples and equations,
    and the largest |u - data| on the data hyperplanes.
    """

    samples: int
    equation_residual: float
    data_residual: float
    worst_equation: str = ""
    worst_point: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def residual(self) -> float:
        return max(self.equation_residual, self.data_residual)


@dataclass(frozen=True)
class ComponentError:
    component: str
    sup: float
    rms: float


@dataclass(frozen=True)
class ErrorReport:
    components: Tuple[ComponentError, ...]

    @property
    def sup(self) -> float:
        return max((c.sup for c in self.components), default=0.0)

    def __getitem__(self, component: str) -> ComponentError:
        for entry in self.components:
            if entry.component == component:
                return entry
        raise KeyError(component)


@dataclass(frozen=True)
class ConvergenceLevel:
    points: Tuple[int, ...]
    spacing: float
    errors: ErrorReport
    order: Optional[float] = None

    @property
    def error(self) -> float:
        return self.errors.sup


@dataclass(frozen=True)
class ConvergenceReport:
    """
    Object representing sup errors on successively halved grids. ``order``
    is the mean of the successive orders log(e_k / e_k+1) / log(d_k / d_k+1);
    it is None when every level is exact to round-off.
    """

    reference: str
    levels: Tuple[ConvergenceLevel, ...]
    exact: bool = False

    @property
    def orders(self) -> Tuple[float, ...]:
        return tuple(level.order for level in self.levels if level.order is not None)

    @property
    def order(self) -> Optional[float]:
        if self.exact or not self.orders:
            return None
        finite = [p for p in self.orders if math.isfinite(p)]
        return sum(finite) / len(finite) if finite else math.inf
