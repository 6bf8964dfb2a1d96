from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from darboux_system.types import exception_reasons
from darboux_system.types.multi_index import MultiIndex
from expression_dsl.types.expression_nodes import Expr

# (unknown name, axis, component) and (unknown name, component), components 1-based
EquationKey = Tuple[str, int, int]
DataKey = Tuple[str, int]


def x_name(axis: int) -> str:
    return f"x{axis}"


@dataclass(frozen=True)
class UnknownSpec:
    """
    Object representing a declared unknown u^I.

    A vector unknown ``w`` of dimension d exposes the scalar components
    ``w_1 .. w_d`` to expressions; a scalar unknown uses its bare name.
    """

    name: str
    index: MultiIndex
    dim: int = 1

    @property
    def component_names(self) -> Tuple[str, ...]:
        if self.dim == 1:
            return (self.name,)
        return tuple(f"{self.name}_{k}" for k in range(1, self.dim + 1))


@dataclass(frozen=True)
class SystemSpec:
    """
    Object representing a system u^I_{x_i} = F^I_i(x; U) with hyperplane data,
    as written by the user, before unknowns sharing a multi-index are merged.

    ``axis_labels`` names each axis by the axis of the outermost system it
    came from, so restricted systems still report original axis numbers.
    """

    n: int
    base_point: Tuple[float, ...]
    unknowns: Tuple[UnknownSpec, ...]
    equations: Mapping[EquationKey, Expr]
    data: Mapping[DataKey, Expr]
    axis_labels: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "base_point", tuple(float(v) for v in self.base_point))
        object.__setattr__(self, "unknowns", tuple(self.unknowns))
        if not self.axis_labels:
            object.__setattr__(self, "axis_labels", tuple(range(1, self.n + 1)))
        if len(self.base_point) != self.n:
            raise ValueError(
                f"base point has {len(self.base_point)} coordinates, expected {self.n}"
            )

    @property
    def x_names(self) -> Tuple[str, ...]:
        return tuple(x_name(axis) for axis in range(1, self.n + 1))


@dataclass(frozen=True)
class Unknown:
    """All declared unknowns sharing one multi-index, grouped into one vector."""

    index: MultiIndex
    members: Tuple[UnknownSpec, ...]

    @property
    def name(self) -> str:
        return "+".join(member.name for member in self.members)

    @property
    def components(self) -> Tuple[str, ...]:
        return tuple(c for member in self.members for c in member.component_names)

    @property
    def dim(self) -> int:
        return len(self.components)


# ---------------------------------------------------------------- violations


@dataclass(frozen=True)
class ClosureViolation:
    variable: str
    unknown: str
    axis: int

    def __str__(self):
        return exception_reasons.Closure.format(**self.__dict__)


@dataclass(frozen=True)
class DependencyViolation:
    index: MultiIndex
    axis: int
    unknown: str
    offending: str

    def __str__(self):
        return exception_reasons.Dependency.format(**self.__dict__)


@dataclass(frozen=True)
class DataVariableViolation:
    unknown: str
    variable: str
    allowed: str

    def __str__(self):
        return exception_reasons.DataVariable.format(**self.__dict__)


@dataclass(frozen=True)
class MissingEquationViolation:
    unknown: str
    axis: int
    component: int

    def __str__(self):
        return exception_reasons.MissingEquation.format(**self.__dict__)


@dataclass(frozen=True)
class UnexpectedEquationViolation:
    unknown: str
    axis: int
    component: int
    index: str

    def __str__(self):
        return exception_reasons.UnexpectedEquation.format(**self.__dict__)


@dataclass(frozen=True)
class MissingDataViolation:
    unknown: str
    component: int

    def __str__(self):
        return exception_reasons.MissingData.format(**self.__dict__)


@dataclass(frozen=True)
class NameViolation:
    name: str
    reason: str

    def __str__(self):
        return exception_reasons.BadName.format(**self.__dict__)


# ---------------------------------------------------------------- validated system


@dataclass(frozen=True)
class ValidatedSystem:
    """
    Object representing a checked system together with its multi-index
    bookkeeping: the family of multi-indices, the dependency sets
    I^I_i = {J : J contains I minus i} and the matching scalar components U^I_i.
    """

    spec: SystemSpec
    unknowns: Tuple[Unknown, ...]
    equations: Mapping[Tuple[str, int], Expr]
    data: Mapping[str, Expr]
    dependency_sets: Mapping[Tuple[MultiIndex, int], Tuple[MultiIndex, ...]]
    allowed_components: Mapping[Tuple[MultiIndex, int], FrozenSet[str]]
    dependency_violations: Tuple[DependencyViolation, ...] = ()
    merged: Tuple[str, ...] = ()
    _by_component: Dict[str, Unknown] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._by_component.update(
            {c: unknown for unknown in self.unknowns for c in unknown.components}
        )

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def base_point(self) -> Tuple[float, ...]:
        return self.spec.base_point

    @property
    def axis_labels(self) -> Tuple[int, ...]:
        return self.spec.axis_labels

    @property
    def index_family(self) -> Tuple[MultiIndex, ...]:
        return tuple(unknown.index for unknown in self.unknowns)

    @property
    def components(self) -> Tuple[str, ...]:
        """Scalar components in declaration order."""
        return tuple(c for member in self.spec.unknowns for c in member.component_names)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def is_determined(self) -> bool:
        return all(len(unknown.index) == 1 for unknown in self.unknowns)

    @property
    def is_overdetermined(self) -> bool:
        return not self.is_determined

    def unknown_of(self, component: str) -> Unknown:
        return self._by_component[component]

    def unknown_with_index(self, index: MultiIndex) -> Optional[Unknown]:
        for unknown in self.unknowns:
            if unknown.index == index:
                return unknown
        return None

    def equation(self, component: str, axis: int) -> Expr:
        return self.equations[(component, axis)]

    def as_spec(self) -> SystemSpec:
        return self.spec
