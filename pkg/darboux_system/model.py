from __future__ import annotations

import logging
import re
from typing import Dict, List, Optional, Tuple

from darboux_system.types.exceptions import (
    AxisNotInIndexError,
    EmptyRestrictionError,
    IndexNotInSystemError,
    SystemValidationError,
)
from darboux_system.types.multi_index import MultiIndex
from darboux_system.types.system_types import (
    ClosureViolation,
    DataVariableViolation,
    DependencyViolation,
    MissingDataViolation,
    MissingEquationViolation,
    NameViolation,
    SystemSpec,
    UnexpectedEquationViolation,
    Unknown,
    UnknownSpec,
    ValidatedSystem,
    x_name,
)
from expression_dsl.calculus import free_vars, simplify, substitute
from expression_dsl.types.expression_nodes import FUNCTION_NAMES, Expr, Number, Variable

LOG = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
INDEPENDENT_VARIABLE = re.compile(r"x\d+")
RESTRICTED_SUFFIX = "__r{label}"


def _check_names(spec: SystemSpec) -> List[NameViolation]:
    violations = []
    seen = set()
    for unknown in spec.unknowns:
        if not IDENTIFIER.fullmatch(unknown.name):
            violations.append(NameViolation(unknown.name, "is not an identifier"))
        if unknown.name in FUNCTION_NAMES:
            violations.append(NameViolation(unknown.name, "is a reserved function name"))
        if unknown.index.n != spec.n:
            violations.append(
                NameViolation(unknown.name, f"has an index over {unknown.index.n} variables, the system has {spec.n}")
            )
        if unknown.dim < 1:
            violations.append(NameViolation(unknown.name, "needs a positive dimension"))

        for component in unknown.component_names:
            if INDEPENDENT_VARIABLE.fullmatch(component):
                violations.append(NameViolation(component, "collides with an independent variable"))
            if component in seen:
                violations.append(NameViolation(component, "is declared twice"))
            seen.add(component)
    return violations


def _group_by_index(spec: SystemSpec) -> Tuple[Unknown, ...]:
    """Unknowns with one multi-index become one vector unknown."""
    groups: Dict[MultiIndex, List[UnknownSpec]] = {}
    for unknown in spec.unknowns:
        groups.setdefault(unknown.index, []).append(unknown)
    return tuple(Unknown(index, tuple(members)) for index, members in groups.items())


def _dependency_sets(unknowns: Tuple[Unknown, ...]):
    family = tuple(unknown.index for unknown in unknowns)
    sets = {}
    allowed = {}
    for unknown in unknowns:
        for axis in unknown.index:
            required = unknown.index.without(axis)
            dependencies = tuple(J for J in family if J.contains_all(required))
            sets[(unknown.index, axis)] = dependencies
            allowed[(unknown.index, axis)] = frozenset(
                component
                for other in unknowns
                if other.index in dependencies
                for component in other.components
            )
    return sets, allowed


def validate(spec: SystemSpec, enforce_dependencies: bool = True) -> ValidatedSystem:
    """
    Check a system and compute its multi-index bookkeeping.

    Every violation found is collected before raising. Condition (i)
    violations (a right-hand side using an unknown outside U^I_i) can be
    kept on the returned system instead, so that the integrability check
    can report them as a failed verdict.

    :param spec: the system as written
    :param enforce_dependencies: raise on condition (i) violations too
    :raises SystemValidationError: with the full list of violations
    """
    violations: list = _check_names(spec)
    if violations:
        raise SystemValidationError(violations)

    unknowns = _group_by_index(spec)
    declared = {member.name: member for member in spec.unknowns}
    owner = {c: member.name for member in spec.unknowns for c in member.component_names}
    x_names = set(spec.x_names)
    known_names = x_names | set(owner)

    equations: Dict[Tuple[str, int], Expr] = {}
    data: Dict[str, Expr] = {}

    for (name, axis, component), rhs in spec.equations.items():
        member = declared.get(name)
        if member is None:
            violations.append(NameViolation(name, "has an equation but is not a declared unknown"))
            continue
        if axis not in member.index or not 1 <= component <= member.dim:
            violations.append(UnexpectedEquationViolation(name, axis, component, str(member.index)))
            continue
        equations[(member.component_names[component - 1], axis)] = rhs

    for (name, component), expression in spec.data.items():
        member = declared.get(name)
        if member is None:
            violations.append(NameViolation(name, "has data but is not a declared unknown"))
            continue
        if not 1 <= component <= member.dim:
            violations.append(NameViolation(f"{name}[{component}]", "is not a component of the unknown"))
            continue
        data[member.component_names[component - 1]] = expression

    dependency_sets, allowed_components = _dependency_sets(unknowns)
    dependency_violations = []

    for member in spec.unknowns:
        for k, component in enumerate(member.component_names, start=1):
            for axis in member.index:
                rhs = equations.get((component, axis))
                if rhs is None:
                    violations.append(MissingEquationViolation(member.name, axis, k))
                    continue

                allowed = allowed_components[(member.index, axis)]
                for variable in sorted(free_vars(rhs)):
                    if variable not in known_names:
                        violations.append(ClosureViolation(variable, member.name, axis))
                    elif variable in owner and variable not in allowed:
                        dependency_violations.append(
                            DependencyViolation(member.index, axis, member.name, owner[variable])
                        )

            expression = data.get(component)
            if expression is None:
                violations.append(MissingDataViolation(member.name, k))
                continue
            allowed_x = [x_name(axis) for axis in member.index.complement]
            for variable in sorted(free_vars(expression) - set(allowed_x)):
                violations.append(
                    DataVariableViolation(member.name, variable, "{" + ", ".join(allowed_x) + "}")
                )

    # one entry per (I, i, offending unknown), components of vectors collapse
    dependency_violations = tuple(dict.fromkeys(dependency_violations))

    if violations or (enforce_dependencies and dependency_violations):
        raise SystemValidationError(violations + list(dependency_violations))

    for violation in dependency_violations:
        LOG.warning(violation)

    merged = tuple(unknown.name for unknown in unknowns if len(unknown.members) > 1)
    for name in merged:
        LOG.info(f"Unknowns {name} share one multi-index and are treated as one vector")

    return ValidatedSystem(
        spec=spec,
        unknowns=unknowns,
        equations=equations,
        data=data,
        dependency_sets=dependency_sets,
        allowed_components=allowed_components,
        dependency_violations=dependency_violations,
        merged=merged,
    )


def index_sets(
    system: ValidatedSystem,
    index: MultiIndex,
    axis: int,
    restricted_axis: Optional[int] = None,
) -> Tuple[Tuple[MultiIndex, ...], Optional[Tuple[MultiIndex, ...]]]:
    """
    :return: I^I_i and, when ``restricted_axis`` (l) is given, the same set
        without the single index (l); otherwise None in second place
    """
    if system.unknown_with_index(index) is None:
        raise IndexNotInSystemError(index)
    if axis not in index:
        raise AxisNotInIndexError(axis, index)

    full = system.dependency_sets[(index, axis)]
    if restricted_axis is None:
        return full, None
    single = MultiIndex.of(system.n, restricted_axis)
    return full, tuple(J for J in full if J != single)


def restricted_family(system: ValidatedSystem, axis: int) -> Tuple[Unknown, ...]:
    """I_l = {I : l in I, I != (l)}."""
    return tuple(
        unknown for unknown in system.unknowns if axis in unknown.index and len(unknown.index) > 1
    )


def restricted_name(name: str, label: int) -> str:
    return name + RESTRICTED_SUFFIX.format(label=label)


def restrict_to_hyperplane(system: ValidatedSystem, axis: int) -> ValidatedSystem:
    """
    Build system l: the unknowns whose index contains l (other than (l)
    itself) restricted to the hyperplane {x_l = base_l}, as a system in the
    remaining n - 1 variables.

    Axes are renumbered consecutively; ``axis_labels`` keeps the original
    numbering. The unknown with index (l), if any, is replaced by its data.
    """
    if not 1 <= axis <= system.n:
        raise AxisNotInIndexError(axis, f"(1..{system.n})")

    family = restricted_family(system, axis)
    if not family:
        raise EmptyRestrictionError(system.axis_labels[axis - 1])

    spec = system.spec
    label = system.axis_labels[axis - 1]
    renumbered = {k: (k if k < axis else k - 1) for k in range(1, system.n + 1) if k != axis}
    n = system.n - 1

    coordinates = {x_name(k): Variable(x_name(new)) for k, new in renumbered.items()}
    coordinates[x_name(axis)] = Number(spec.base_point[axis - 1])

    # bracketed substitution: u^(l) by its data, which lives in x'^l already
    single = system.unknown_with_index(MultiIndex.of(system.n, axis))
    replacements = {}
    if single is not None:
        replacements = {c: system.data[c] for c in single.components}

    unknowns = []
    equations = {}
    data = {}
    names = {}
    for unknown in family:
        index = MultiIndex(tuple(renumbered[k] for k in unknown.index.without(axis)), n)
        for member in unknown.members:
            restricted = UnknownSpec(restricted_name(member.name, label), index, member.dim)
            unknowns.append(restricted)
            names.update(zip(member.component_names, restricted.component_names))

    replacements.update({old: Variable(new) for old, new in names.items()})

    for unknown in family:
        for member in unknown.members:
            new_name = restricted_name(member.name, label)
            for k, component in enumerate(member.component_names, start=1):
                for i in unknown.index.without(axis):
                    rhs = substitute(system.equations[(component, i)], replacements)
                    equations[(new_name, renumbered[i], k)] = simplify(substitute(rhs, coordinates))
                data[(new_name, k)] = simplify(substitute(system.data[component], coordinates))

    restricted_spec = SystemSpec(
        n=n,
        base_point=tuple(v for k, v in enumerate(spec.base_point, start=1) if k != axis),
        unknowns=tuple(unknowns),
        equations=equations,
        data=data,
        axis_labels=tuple(v for k, v in enumerate(system.axis_labels, start=1) if k != axis),
    )
    LOG.debug(f"System {label}: {len(unknowns)} unknown(s) in {n} variable(s)")
    return validate(restricted_spec)


def build_system_n(system: ValidatedSystem) -> ValidatedSystem:
    """
    The determined system keeping, for every unknown u^I, only the equation
    along min I. Data expressions are carried over unchanged; for |I| > 1
    the solver replaces them with fields from the restricted systems.
    """
    unknowns = tuple(
        UnknownSpec(member.name, MultiIndex.of(system.n, member.index.minimum), member.dim)
        for member in system.spec.unknowns
    )
    minimum = {member.name: member.index.minimum for member in system.spec.unknowns}
    equations = {
        (name, axis, component): rhs
        for (name, axis, component), rhs in system.spec.equations.items()
        if axis == minimum[name]
    }
    determined = SystemSpec(
        n=system.n,
        base_point=system.base_point,
        unknowns=unknowns,
        equations=equations,
        data=dict(system.spec.data),
        axis_labels=system.axis_labels,
    )
    return validate(determined)
