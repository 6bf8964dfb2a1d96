from __future__ import annotations

import logging
import math
from typing import List, Mapping

from darboux_solver.solver import DEFAULT_DELTA_TOL_FACTOR, solve_darboux
from darboux_system.types.system_types import ValidatedSystem
from expression_dsl.types.expression_nodes import Expr
from picard_solver.picard import DEFAULT_MAX_ITER, DEFAULT_TOL
from picard_solver.types.exceptions import SolverError
from picard_solver.types.grid_types import Grid, InitMode
from verification_harness.residuals import error_report
from verification_harness.types import exception_reasons
from verification_harness.types.exceptions import ConvergenceStudyError
from verification_harness.types.report_types import ConvergenceLevel, ConvergenceReport

LOG = logging.getLogger(__name__)

MIN_LEVELS = 3
# sup errors at or below this count as round-off
EXACT_ERROR = 1e-13


def convergence_study(
    system: ValidatedSystem,
    base_grid: Grid,
    reference: Mapping[str, Expr],
    levels: int = MIN_LEVELS,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    init: InitMode = InitMode.data_extension,
    reference_name: str = "<reference>",
) -> ConvergenceReport:
    """
    Solve on ``base_grid`` and on ``levels - 1`` successive halvings of its
    spacing and measure the sup error against ``reference`` at every level.

    :raises ConvergenceStudyError: a level failed to solve; names the level
    """
    if levels < MIN_LEVELS:
        raise ValueError(exception_reasons.TooFewLevels.format(levels=levels))

    grid = base_grid
    results: List[ConvergenceLevel] = []
    for level in range(levels):
        LOG.info(f"Convergence level {level}: {grid.shape} nodes, spacing {grid.max_spacing:.4g}")
        try:
            result = solve_darboux(system, grid, tol, max_iter, DEFAULT_DELTA_TOL_FACTOR, init)
        except SolverError as err:
            raise ConvergenceStudyError(level, grid.shape, err) from err

        errors = error_report(result.solution, reference)
        order = None
        if results:
            previous = results[-1]
            if previous.error > 0 and errors.sup > 0:
                order = math.log(previous.error / errors.sup) / math.log(previous.spacing / grid.max_spacing)
            elif previous.error > 0:
                order = math.inf
        results.append(ConvergenceLevel(grid.shape, grid.max_spacing, errors, order))
        grid = grid.refine()

    exact = all(level.error <= EXACT_ERROR for level in results)
    report = ConvergenceReport(reference=reference_name, levels=tuple(results), exact=exact)
    if exact:
        LOG.info("Every level reproduces the reference to round-off")
    else:
        LOG.info(f"Observed order {report.order:.3f}")
    return report
