from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from darboux_system.types.multi_index import MultiIndex
from darboux_system.types.system_types import ValidatedSystem, x_name
from expression_dsl.calculus import diff, simplify
from expression_dsl.evaluator import evaluate
from expression_dsl.types.expression_nodes import Expr, Mul, Number
from integrability.types.report_types import IntegrabilityReport, TripleResidual
from picard_solver import sampling

LOG = logging.getLogger(__name__)

DEFAULT_SAMPLES = 4096
DEFAULT_TOL = 1e-10
DEFAULT_U_RADIUS = 1.0


@dataclass(frozen=True)
class IdentitySides:
    """
    Terms of F^I_{i,x_j} + sum over J in I^I_i of F^I_{i,u^J} F^J_j
    (``left``) and of the same with i and j swapped (``right``),
    one pair per scalar component of u^I.
    """

    left: Dict[str, Tuple[Expr, ...]]
    right: Dict[str, Tuple[Expr, ...]]


def _side(system: ValidatedSystem, component: str, index: MultiIndex, i: int, j: int) -> Tuple[Expr, ...]:
    rhs = system.equation(component, i)
    terms = [diff(rhs, x_name(j))]
    for J in system.dependency_sets[(index, i)]:
        for other in system.unknown_with_index(J).components:
            partial = diff(rhs, other)
            if partial != Number(0):
                terms.append(simplify(Mul(partial, system.equation(other, j))))
    return tuple(term for term in terms if term != Number(0))


def identity_sides(system: ValidatedSystem, index: MultiIndex, i: int, j: int) -> IdentitySides:
    unknown = system.unknown_with_index(index)
    return IdentitySides(
        left={c: _side(system, c, index, i, j) for c in unknown.components},
        right={c: _side(system, c, index, j, i) for c in unknown.components},
    )


def _evaluate_sides(
    sides: IdentitySides, env: Mapping[str, np.ndarray], count: int
) -> Tuple[np.ndarray, np.ndarray]:
    """:return: residual and scale per sample, maximized over components"""
    residual = np.zeros(count)
    largest = np.zeros(count)
    for component in sides.left:
        totals = []
        for terms in (sides.left[component], sides.right[component]):
            values = [sampling.evaluate_samples(term, env, count) for term in terms]
            for v in values:
                largest = np.maximum(largest, np.abs(v))
            totals.append(np.sum(values, axis=0) if values else np.zeros(count))
        residual = np.maximum(residual, np.abs(totals[0] - totals[1]))
    return residual, 1 + largest


def residual_at_point(
    system: ValidatedSystem, index: MultiIndex, i: int, j: int, point: Mapping[str, float]
) -> float:
    """
    |left - right| of the mixed-partial identity for (I, i, j) at one point
    (x, U); for vector unknowns the largest over components.

    :raises SamplingError: evaluation fails at the point
    """
    if i == j or i not in index or j not in index:
        raise ValueError(f"need i != j in {index}, got i={i}, j={j}")
    env = {name: np.array([value], dtype=float) for name, value in point.items()}
    residual, _ = _evaluate_sides(identity_sides(system, index, i, j), env, 1)
    return float(residual[0])


def sample_box(
    system: ValidatedSystem,
    x_radius: Sequence[float],
    u_radius: float,
    samples: int,
    seed: int = sampling.DEFAULT_SEED,
) -> Dict[str, np.ndarray]:
    """
    Quasi-random points of the box base +- x_radius times U_bar +- u_radius,
    U_bar being the data evaluated at the base point; the first sample is
    the center.
    """
    x_names = system.spec.x_names
    components = system.components
    base = dict(zip(x_names, system.base_point))
    u_bar = [float(evaluate(system.data[c], base)) for c in components]

    center = list(system.base_point) + u_bar
    radii = list(x_radius) + [u_radius] * len(components)
    points = sampling.to_box(
        sampling.halton_points(len(center), samples, seed), center, radii
    )
    points[0] = center
    return sampling.columns(list(x_names) + list(components), points)


def check_integrability(
    system: ValidatedSystem,
    x_radius: Optional[Sequence[float]] = None,
    u_radius: float = DEFAULT_U_RADIUS,
    samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
    seed: int = sampling.DEFAULT_SEED,
) -> IntegrabilityReport:
    """
    Decide whether ``system`` is a Darboux system: no condition (i)
    violations, and the mixed-partial identity holds at every sample up to
    tol * scale. The identity is checked by sampling, not proven.

    :param x_radius: per-axis half-widths of the x-box, default 1
    :raises SamplingError: a term fails to evaluate at a sample
    """
    labels = system.axis_labels
    if system.dependency_violations:
        for violation in system.dependency_violations:
            LOG.warning(violation)
        return IntegrabilityReport(
            tol=tol, samples=0, violations=system.dependency_violations, axis_labels=labels
        )

    overdetermined = [unknown for unknown in system.unknowns if len(unknown.index) > 1]
    if not overdetermined:
        return IntegrabilityReport(tol=tol, samples=0, axis_labels=labels)

    if x_radius is None:
        x_radius = (1.0,) * system.n
    env = sample_box(system, x_radius, u_radius, samples, seed)

    triples: List[TripleResidual] = []
    for unknown in overdetermined:
        for i, j in combinations(unknown.index.axes, 2):
            residual, scale = _evaluate_sides(identity_sides(system, unknown.index, i, j), env, samples)
            worst = int(np.argmax(residual / scale))
            triples.append(
                TripleResidual(
                    index=unknown.index,
                    i=i,
                    j=j,
                    residual=float(residual[worst]),
                    scale=float(scale[worst]),
                    point={name: float(values[worst]) for name, values in env.items()},
                    max_residual=float(np.max(residual)),
                )
            )

    report = IntegrabilityReport(
        tol=tol, samples=samples, triples=tuple(triples), axis_labels=labels
    )
    if report.passed:
        LOG.info(f"Integrability identity holds on {samples} samples (max ratio {report.max_ratio:.2e})")
    else:
        LOG.warning(f"Integrability identity fails: max residual/scale {report.max_ratio:.2e} > {tol:.1e}")
    return report
