from __future__ import annotations

import asyncio
import logging
import threading
from itertools import combinations
from typing import Awaitable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from darboux_solver.types.exceptions import MissingSubsolutionError, SubsystemError, describe_path
from darboux_solver.types.report_types import (
    ConsistencyEntry,
    ConsistencyReport,
    DarbouxResult,
    DeltaEntry,
    DeltaReport,
)
from darboux_system.model import (
    build_system_n,
    restrict_to_hyperplane,
    restricted_family,
    restricted_name,
)
from darboux_system.types.system_types import ValidatedSystem
from expression_dsl.evaluator import evaluate
from expression_dsl.types.exceptions import ExpressionError
from picard_solver.picard import DEFAULT_MAX_ITER, DEFAULT_TOL, solve_determined
from picard_solver.types.exceptions import DataShapeError, NodeEvaluationError, SolveCancelledError, SolverError
from picard_solver.types.grid_types import Constants, Grid, GridSolution, InitMode

LOG = logging.getLogger(__name__)

DEFAULT_DELTA_TOL_FACTOR = 10.0

Subsolutions = Mapping[int, DarbouxResult]


def residual_threshold(grid: Grid, tol: float, factor: float) -> float:
    """factor * (delta^2 + tol), delta the largest grid spacing."""
    return factor * (grid.max_spacing**2 + tol)


def _labels(system: ValidatedSystem, axes) -> Tuple[int, ...]:
    return tuple(system.axis_labels[axis - 1] for axis in axes)


def assemble_data_for_system_n(
    system: ValidatedSystem, subsolutions: Subsolutions, grid: Grid
) -> Dict[str, np.ndarray]:
    """
    Data of system n, one array per component on the hyperplane
    {x_m = base_m}, m = min I, with that axis removed: the original data for
    |I| = 1, the solution of system m otherwise (a node copy, the grids are
    nested).

    :raises MissingSubsolutionError: system m was not solved
    :raises DataShapeError: system m was solved on a different grid
    """
    mesh = grid.mesh()
    fields = {}
    for unknown in system.unknowns:
        axis = unknown.index.minimum
        shape = tuple(s for k, s in enumerate(grid.shape, start=1) if k != axis)

        if len(unknown.index) == 1:
            env = {name: values for name, values in mesh.items() if name != f"x{axis}"}
            for component in unknown.components:
                try:
                    values = evaluate(system.data[component], env)
                except ExpressionError as err:
                    raise NodeEvaluationError(component, axis, err) from err
                values = np.broadcast_to(np.asarray(values, dtype=float), grid.shape)
                fields[component] = np.take(values, grid.axes[axis - 1].center_index, axis=axis - 1)
            continue

        if axis not in subsolutions:
            raise MissingSubsolutionError(system.axis_labels[axis - 1], unknown.name)
        restricted = subsolutions[axis].solution
        label = system.axis_labels[axis - 1]
        for component in unknown.components:
            name = restricted_name(component, label)
            if name not in restricted.fields:
                raise MissingSubsolutionError(label, unknown.name)
            field = restricted.fields[name]
            if field.shape != shape:
                raise DataShapeError(name, field.shape, shape)
            fields[component] = field
    return fields


def delta_residuals(
    system: ValidatedSystem,
    solution: GridSolution,
    tol: float = DEFAULT_TOL,
    delta_tol_factor: float = DEFAULT_DELTA_TOL_FACTOR,
    threshold: Optional[float] = None,
) -> DeltaReport:
    """
    sup |u^I_{x_i} - F^I_i(x; U)| for every i in I with i > min I, the
    partial taken by second-order differences (central inside, one-sided at
    the faces). The min-axis equations hold by construction and are skipped.
    """
    grid = solution.grid
    if threshold is None:
        threshold = residual_threshold(grid, tol, delta_tol_factor)
    env = dict(grid.mesh())
    env.update(solution.fields)

    entries = []
    for unknown in system.unknowns:
        for axis in unknown.index.axes[1:]:
            sup = 0.0
            for component in unknown.components:
                derivative = np.gradient(
                    solution.fields[component], grid.axes[axis - 1].spacing, axis=axis - 1, edge_order=2
                )
                try:
                    rhs = evaluate(system.equation(component, axis), env)
                except ExpressionError as err:
                    raise NodeEvaluationError(component, axis, err) from err
                sup = max(sup, float(np.max(np.abs(derivative - rhs))))
            entries.append(
                DeltaEntry(
                    unknown=unknown.name,
                    index=_labels(system, unknown.index),
                    axis=system.axis_labels[axis - 1],
                    sup=sup,
                )
            )

    report = DeltaReport(threshold=threshold, entries=tuple(entries))
    for entry in entries:
        if entry.sup > threshold:
            LOG.warning(
                f"Delta residual of {entry.unknown}_x{entry.axis} is {entry.sup:.3e}, above {threshold:.3e}"
            )
    return report


def intersection_consistency(
    system: ValidatedSystem,
    subsolutions: Subsolutions,
    threshold: float,
) -> ConsistencyReport:
    """
    For every unknown u^I and pair k < l in I with both systems solved,
    compare u^{k,I} on {x_l = base_l} with u^{l,I} on {x_k = base_k}.
    """
    entries = []
    for unknown in system.unknowns:
        for k, l in combinations(unknown.index.axes, 2):
            if k not in subsolutions or l not in subsolutions:
                continue
            label_k, label_l = system.axis_labels[k - 1], system.axis_labels[l - 1]
            from_k = subsolutions[k].solution
            from_l = subsolutions[l].solution
            discrepancy = 0.0
            for component in unknown.components:
                # in system k the axes after k move down by one
                on_l = from_k.on_hyperplane(restricted_name(component, label_k), l - 1)
                on_k = from_l.on_hyperplane(restricted_name(component, label_l), k)
                discrepancy = max(discrepancy, float(np.max(np.abs(on_l - on_k))))
            entries.append(
                ConsistencyEntry(
                    unknown=unknown.name,
                    index=_labels(system, unknown.index),
                    k=label_k,
                    l=label_l,
                    discrepancy=discrepancy,
                )
            )

    report = ConsistencyReport(threshold=threshold, entries=tuple(entries))
    for entry in entries:
        if entry.discrepancy > threshold:
            LOG.warning(
                f"Systems {entry.k} and {entry.l} disagree on {entry.unknown} by {entry.discrepancy:.3e}"
            )
    return report


def _in_subsystem(path: Tuple[int, ...], err: SolverError) -> SolverError:
    """``err`` labelled with the recursion path; cancellations and labelled errors pass through."""
    if path and not isinstance(err, (SubsystemError, SolveCancelledError)):
        return SubsystemError(path, err)
    return err


async def _gather_subsystems(jobs: Sequence[Awaitable[DarbouxResult]], stop: threading.Event) -> List[DarbouxResult]:
    """
    Run the restricted solves concurrently. The first failure sets ``stop``,
    so sibling solves give up at their next sweep, and every solve is
    awaited before that failure is raised.
    """
    tasks = [asyncio.ensure_future(job) for job in jobs]
    if not tasks:
        return []
    _, pending = await asyncio.wait(tasks, return_when=asyncio.FIRST_EXCEPTION)
    if pending:
        stop.set()
        await asyncio.wait(pending)

    failures = [task.exception() for task in tasks if task.exception() is not None]
    if failures:
        stop.set()
        own = [err for err in failures if not isinstance(err, SolveCancelledError)]
        raise (own or failures)[0]
    return [task.result() for task in tasks]


async def _solve_subsystem(
    system: ValidatedSystem,
    grid: Grid,
    axis: int,
    tol: float,
    max_iter: int,
    init: InitMode,
    threshold: float,
    path: Tuple[int, ...],
    stop: threading.Event,
) -> DarbouxResult:
    label = system.axis_labels[axis - 1]
    subsystem = restrict_to_hyperplane(system, axis)
    return await _solve_darboux(
        subsystem, grid.drop_axis(axis), tol, max_iter, init, threshold, path + (label,), False, stop
    )


async def _solve_darboux(
    system: ValidatedSystem,
    grid: Grid,
    tol: float,
    max_iter: int,
    init: InitMode,
    threshold: float,
    path: Tuple[int, ...],
    progress: bool,
    stop: threading.Event,
    constants: Optional[Constants] = None,
) -> DarbouxResult:
    if path:
        LOG.info(f"Solving {describe_path(path)}: {system.component_count} component(s) on {grid.shape} nodes")

    if system.is_determined:
        try:
            solution = await asyncio.to_thread(
                solve_determined, system, grid, tol, max_iter, init, None, constants, progress, stop
            )
        except SolverError as err:
            labelled = _in_subsystem(path, err)
            if labelled is err:
                raise
            raise labelled from err
        return DarbouxResult(
            solution,
            DeltaReport(threshold=threshold, path=path),
            ConsistencyReport(threshold=threshold, path=path),
        )

    axes = [axis for axis in range(1, system.n + 1) if restricted_family(system, axis)]
    results = await _gather_subsystems(
        [_solve_subsystem(system, grid, axis, tol, max_iter, init, threshold, path, stop) for axis in axes],
        stop,
    )
    subsolutions = dict(zip(axes, results))

    data = assemble_data_for_system_n(system, subsolutions, grid)
    system_n = build_system_n(system)
    try:
        solution = await asyncio.to_thread(
            solve_determined, system_n, grid, tol, max_iter, init, data, None, progress, stop
        )
    except SolverError as err:
        labelled = _in_subsystem(path, err)
        if labelled is err:
            raise
        raise labelled from err

    delta_report = delta_residuals(system, solution, threshold=threshold)
    consistency_report = intersection_consistency(system, subsolutions, threshold)
    delta_report.path = consistency_report.path = path
    delta_report.subsystems = tuple(result.delta_report for result in results)
    consistency_report.subsystems = tuple(result.consistency_report for result in results)
    return DarbouxResult(solution, delta_report, consistency_report)


async def solve_darboux_async(
    system: ValidatedSystem,
    grid: Grid,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    delta_tol_factor: float = DEFAULT_DELTA_TOL_FACTOR,
    init: InitMode = InitMode.data_extension,
    progress: bool = False,
    constants: Optional[Constants] = None,
) -> DarbouxResult:
    """
    Solve a Darboux system on ``grid`` by recursion on hyperplanes: every
    system l with a nonempty family is solved on the slice {x_l = base_l}
    (concurrently), systems 1..n-1 give the data of the determined system n,
    whose solution is returned together with the Delta and consistency
    reports. A determined system goes straight to the Picard solver, with
    ``constants`` when given.

    The reports' verdicts are not raised: a failing verdict is returned
    with the solution.

    :raises SubsystemError: a restricted system did not converge, the one on
        {x_n = base_n} included; names its path. Sibling solves are stopped
        and awaited before it is raised
    :raises PicardConvergenceError: the top-level system n did not converge
    """
    threshold = residual_threshold(grid, tol, delta_tol_factor)
    stop = threading.Event()
    return await _solve_darboux(system, grid, tol, max_iter, init, threshold, (), progress, stop, constants)


def solve_darboux(
    system: ValidatedSystem,
    grid: Grid,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    delta_tol_factor: float = DEFAULT_DELTA_TOL_FACTOR,
    init: InitMode = InitMode.data_extension,
    progress: bool = False,
    constants: Optional[Constants] = None,
) -> DarbouxResult:
    return asyncio.run(
        solve_darboux_async(system, grid, tol, max_iter, delta_tol_factor, init, progress, constants)
    )
