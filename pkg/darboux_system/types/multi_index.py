from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple


@dataclass(frozen=True, order=True)
class MultiIndex:
    """
    Strictly increasing list of axes (1-based) along which an unknown's
    partial derivatives are prescribed, out of ``n`` independent variables.
    """

    axes: Tuple[int, ...]
    n: int

    def __post_init__(self):
        axes = tuple(int(axis) for axis in self.axes)
        object.__setattr__(self, "axes", axes)
        if not axes:
            raise ValueError("a multi-index needs at least one axis")
        if any(a >= b for a, b in zip(axes, axes[1:])):
            raise ValueError(f"multi-index {axes} is not strictly increasing")
        if axes[0] < 1 or axes[-1] > self.n:
            raise ValueError(f"multi-index {axes} leaves the axis range 1..{self.n}")

    @classmethod
    def of(cls, n: int, *axes: int) -> "MultiIndex":
        return cls(tuple(axes), n)

    def __iter__(self) -> Iterator[int]:
        return iter(self.axes)

    def __len__(self) -> int:
        return len(self.axes)

    def __contains__(self, axis: int) -> bool:
        return axis in self.axes

    def __str__(self) -> str:
        return "(" + ",".join(str(axis) for axis in self.axes) + ")"

    @property
    def minimum(self) -> int:
        return self.axes[0]

    @property
    def complement(self) -> Tuple[int, ...]:
        """I^c: the axes along which nothing is prescribed."""
        return tuple(axis for axis in range(1, self.n + 1) if axis not in self.axes)

    def without(self, axis: int) -> Tuple[int, ...]:
        """I minus i; possibly empty, hence a plain tuple."""
        return tuple(a for a in self.axes if a != axis)

    def contains_all(self, axes: Iterable[int]) -> bool:
        return set(axes) <= set(self.axes)

    def is_single(self, axis: int = None) -> bool:
        if len(self.axes) != 1:
            return False
        return axis is None or self.axes[0] == axis
