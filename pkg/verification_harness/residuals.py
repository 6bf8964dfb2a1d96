from __future__ import annotations

import logging
from typing import Mapping, Optional, Sequence

import numpy as np

from darboux_system.types.system_types import ValidatedSystem, x_name
from expression_dsl.calculus import diff, free_vars, simplify, substitute
from expression_dsl.evaluator import evaluate
from expression_dsl.types.expression_nodes import Expr, Sub
from picard_solver import sampling
from picard_solver.types.grid_types import GridSolution
from verification_harness.types.exceptions import CandidateError
from verification_harness.types.report_types import CandidateReport, ComponentError, ErrorReport

LOG = logging.getLogger(__name__)

DEFAULT_SAMPLES = 4096


def _check_candidate(system: ValidatedSystem, candidate: Mapping[str, Expr], kind: str, path: str):
    missing = [c for c in system.components if c not in candidate]
    unexpected = [c for c in candidate if c not in system.components]
    if missing or unexpected:
        raise CandidateError.components(kind, path, missing, unexpected)
    allowed = set(system.spec.x_names)
    for component, expression in candidate.items():
        extra = free_vars(expression) - allowed
        if extra:
            raise CandidateError.variables(kind, component, system.n, extra)


def candidate_residual(
    system: ValidatedSystem,
    candidate: Mapping[str, Expr],
    samples: int = DEFAULT_SAMPLES,
    x_radius: Optional[Sequence[float]] = None,
    seed: int = sampling.DEFAULT_SEED,
    path: str = "<candidate>",
) -> CandidateReport:
    """
    Residuals of closed-form ``candidate`` expressions (one per scalar
    component, in x only) against every equation of ``system`` and against
    its data.

    Equations are checked at quasi-random points of base +- x_radius
    (default 1 per axis), the base point included. The data of u^I is
    checked at the same points projected onto {x_I = base_I}.

    :raises CandidateError: components missing or extra, or non-x variables
    :raises SamplingError: an expression fails at a sample
    """
    _check_candidate(system, candidate, "Candidate", path)
    if x_radius is None:
        x_radius = (1.0,) * system.n

    x_names = system.spec.x_names
    points = sampling.to_box(sampling.halton_points(system.n, samples, seed), system.base_point, x_radius)
    points[0] = system.base_point
    env = sampling.columns(x_names, points)

    worst, worst_equation, worst_index = 0.0, "", 0
    for unknown in system.unknowns:
        for component in unknown.components:
            for axis in unknown.index:
                lhs = diff(candidate[component], x_name(axis))
                rhs = substitute(system.equation(component, axis), candidate)
                residual = np.abs(sampling.evaluate_samples(simplify(Sub(lhs, rhs)), env, samples))
                k = int(np.argmax(residual))
                if residual[k] > worst or not worst_equation:
                    worst, worst_equation, worst_index = float(residual[k]), f"{component}_x{axis}", k

    data_residual = 0.0
    for unknown in system.unknowns:
        on_plane = dict(env)
        for axis in unknown.index:
            on_plane[x_name(axis)] = np.full(samples, system.base_point[axis - 1])
        for component in unknown.components:
            offset = sampling.evaluate_samples(
                Sub(candidate[component], system.data[component]), on_plane, samples
            )
            data_residual = max(data_residual, float(np.max(np.abs(offset))))

    report = CandidateReport(
        samples=samples,
        equation_residual=worst,
        data_residual=data_residual,
        worst_equation=worst_equation,
        worst_point={name: float(values[worst_index]) for name, values in env.items()},
    )
    LOG.info(
        f"Candidate residuals on {samples} samples: equations {worst:.3e} ({worst_equation}), data {data_residual:.3e}"
    )
    return report


def error_report(solution: GridSolution, reference: Mapping[str, Expr]) -> ErrorReport:
    """
    Node-wise sup and RMS error of ``solution`` against reference
    expressions; components without a reference are left out.

    :raises CandidateError: a reference names no component of the solution
    """
    unexpected = [c for c in reference if c not in solution.fields]
    if unexpected:
        raise CandidateError.components("Reference", "<reference>", [], unexpected)

    mesh = solution.grid.mesh()
    entries = []
    for component, values in solution.fields.items():
        if component not in reference:
            LOG.info(f"No reference for {component}, skipped")
            continue
        exact = np.broadcast_to(np.asarray(evaluate(reference[component], mesh), dtype=float), values.shape)
        error = values - exact
        entries.append(
            ComponentError(
                component=component,
                sup=float(np.max(np.abs(error))),
                rms=float(np.sqrt(np.mean(error**2))),
            )
        )
    return ErrorReport(components=tuple(entries))
