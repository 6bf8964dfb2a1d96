from dataclasses import dataclass
from typing import NamedTuple, Tuple

from picard_solver.types.grid_types import GridSolution


@dataclass(frozen=True)
class DeltaEntry:
    """sup |u^I_{x_i} - F^I_i| over the grid for one i > min I; axes as labels."""

    unknown: str
    index: Tuple[int, ...]
    axis: int
    sup: float


@dataclass(frozen=True)
class ConsistencyEntry:
    """sup |u^{k,I} on {x_l = base} - u^{l,I} on {x_k = base}|; axes as labels."""

    unknown: str
    index: Tuple[int, ...]
    k: int
    l: int
    discrepancy: float


@dataclass
class DeltaReport:
    threshold: float
    entries: Tuple[DeltaEntry, ...] = ()
    path: Tuple[int, ...] = ()
    subsystems: Tuple["DeltaReport", ...] = ()

    @property
    def passed(self) -> bool:
        return all(e.sup <= self.threshold for e in self.entries) and all(
            report.passed for report in self.subsystems
        )

    @property
    def max_sup(self) -> float:
        own = max((e.sup for e in self.entries), default=0.0)
        return max([own] + [report.max_sup for report in self.subsystems])


@dataclass
class ConsistencyReport:
    threshold: float
    entries: Tuple[ConsistencyEntry, ...] = ()
    path: Tuple[int, ...] = ()
    subsystems: Tuple["ConsistencyReport", ...] = ()

    @property
    def passed(self) -> bool:
        return all(e.discrepancy <= self.threshold for e in self.entries) and all(
            report.passed for report in self.subsystems
        )

    @property
    def max_discrepancy(self) -> float:
        own = max((e.discrepancy for e in self.entries), default=0.0)
        return max([own] + [report.max_discrepancy for report in self.subsystems])


class DarbouxResult(NamedTuple):
    solution: GridSolution
    delta_report: DeltaReport
    consistency_report: ConsistencyReport

    @property
    def passed(self) -> bool:
        return self.delta_report.passed and self.consistency_report.passed
