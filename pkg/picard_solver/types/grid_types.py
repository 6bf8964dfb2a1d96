from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from picard_solver.types.exceptions import GridSpecError


class InitMode(Enum):
    data_extension = "data_extension"
    zeros = "zeros"

    @staticmethod
    def from_str(value: str) -> "InitMode":
        return getattr(InitMode, value.lower())


@dataclass(frozen=True)
class GridAxis:
    """
    Uniform nodes center - halfwidth .. center + halfwidth; the point count
    is odd so that the center is a node.
    """

    center: float
    halfwidth: float
    points: int

    def __post_init__(self):
        if not self.halfwidth > 0:
            raise GridSpecError(f"half-width must be positive, got {self.halfwidth}")
        if self.points < 3 or self.points % 2 == 0:
            raise GridSpecError(f"point count must be odd and at least 3, got {self.points}")

    @property
    def spacing(self) -> float:
        return 2 * self.halfwidth / (self.points - 1)

    @property
    def center_index(self) -> int:
        return (self.points - 1) // 2

    @property
    def coordinates(self) -> np.ndarray:
        # built from the center so that the base node is exact
        steps = np.arange(-self.center_index, self.center_index + 1)
        return self.center + self.spacing * steps

    def refine(self) -> "GridAxis":
        return GridAxis(self.center, self.halfwidth, 2 * self.points - 1)


@dataclass(frozen=True)
class Grid:
    axes: Tuple[GridAxis, ...]

    @classmethod
    def build(
        cls, base_point: Sequence[float], halfwidth: Sequence[float], points: Sequence[int]
    ) -> "Grid":
        if not len(base_point) == len(halfwidth) == len(points):
            raise GridSpecError("base point, half-widths and point counts differ in length")
        return cls(tuple(GridAxis(c, h, m) for c, h, m in zip(base_point, halfwidth, points)))

    @property
    def n(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(axis.points for axis in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def base_point(self) -> Tuple[float, ...]:
        return tuple(axis.center for axis in self.axes)

    @property
    def center_index(self) -> Tuple[int, ...]:
        return tuple(axis.center_index for axis in self.axes)

    @property
    def spacings(self) -> Tuple[float, ...]:
        return tuple(axis.spacing for axis in self.axes)

    @property
    def max_spacing(self) -> float:
        return max(self.spacings)

    @property
    def halfwidths(self) -> Tuple[float, ...]:
        return tuple(axis.halfwidth for axis in self.axes)

    def coordinates(self, axis: int) -> np.ndarray:
        """Node coordinates along ``axis`` (1-based), shaped to broadcast over the grid."""
        shape = [1] * self.n
        shape[axis - 1] = self.axes[axis - 1].points
        return self.axes[axis - 1].coordinates.reshape(shape)

    def mesh(self) -> Dict[str, np.ndarray]:
        """Sparse ij-mesh keyed by variable name x1..xn."""
        return {f"x{k}": self.coordinates(k) for k in range(1, self.n + 1)}

    def hyperplane(self, axis: int) -> Tuple:
        """Index selecting the nodes with x_axis at its center, keeping the axis."""
        index = [slice(None)] * self.n
        center = self.axes[axis - 1].center_index
        index[axis - 1] = slice(center, center + 1)
        return tuple(index)

    def drop_axis(self, axis: int) -> "Grid":
        return Grid(tuple(a for k, a in enumerate(self.axes, start=1) if k != axis))

    def refine(self) -> "Grid":
        return Grid(tuple(axis.refine() for axis in self.axes))


@dataclass(frozen=True)
class Constants:
    """
    Sampled estimates of the existence constants: M bounds |F|, L is a
    Lipschitz constant in U and sigma = min(a, b / (2 M N)), or a when M = 0.
    ``data_deviation`` is max |phi(x') - phi(base)| over the x-samples and
    ``data_within_bound`` tells whether it stays below b / (2N).
    """

    a: float
    b: float
    L: float
    M: float
    sigma: float
    N: int
    data_deviation: float = 0.0
    data_within_bound: bool = True


@dataclass
class GridSolution:
    """
    Object representing the fixed point found on a grid: one field of
    ``grid.shape`` per scalar component, in declaration order.
    """

    grid: Grid
    fields: Dict[str, np.ndarray]
    iterations: int = 0
    final_update: float = 0.0
    history: Tuple[float, ...] = ()
    constants: Optional[Constants] = None
    axis_labels: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.axis_labels:
            self.axis_labels = tuple(range(1, self.grid.n + 1))

    @property
    def components(self) -> Tuple[str, ...]:
        return tuple(self.fields)

    def on_hyperplane(self, component: str, axis: int) -> np.ndarray:
        """Field values on {x_axis = center} with that axis removed."""
        center = self.grid.axes[axis - 1].center_index
        return np.take(self.fields[component], center, axis=axis - 1)
