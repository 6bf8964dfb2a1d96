from dataclasses import dataclass, field
from typing import Dict, Tuple

from darboux_system.types.multi_index import MultiIndex


@dataclass(frozen=True)
class TripleResidual:
    """
    Object representing the mixed-partial identity for one (I, i, j), i < j:
    the sample with the largest residual / scale ratio, where
    scale = 1 + max |individual term| at that sample.
    """

    index: MultiIndex
    i: int
    j: int
    residual: float
    scale: float
    point: Dict[str, float] = field(compare=False)
    max_residual: float = 0.0

    @property
    def ratio(self) -> float:
        return self.residual / self.scale


@dataclass
class IntegrabilityReport:
    """
    Object representing the verdict of the Darboux check: structural
    violations are reported without sampling; otherwise every triple must
    satisfy residual <= tol * scale at every sample.
    """

    tol: float
    samples: int
    triples: Tuple[TripleResidual, ...] = ()
    violations: Tuple = ()
    axis_labels: Tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations and all(t.residual <= self.tol * t.scale for t in self.triples)

    @property
    def max_ratio(self) -> float:
        return max((t.ratio for t in self.triples), default=0.0)
