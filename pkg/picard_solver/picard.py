from __future__ import annotations

import logging
import threading
from typing import Dict, Mapping, Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid
from tqdm import tqdm

from darboux_system.types.system_types import ValidatedSystem
from expression_dsl.evaluator import evaluate
from expression_dsl.types.exceptions import ExpressionError
from picard_solver import sampling
from picard_solver.types.exceptions import (
    DataShapeError,
    NodeEvaluationError,
    PicardConvergenceError,
    PicardDivergenceError,
    SolveCancelledError,
)
from picard_solver.types.grid_types import Constants, Grid, GridSolution, InitMode

LOG = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200
DIVERGENCE_STREAK = 5
DEFAULT_SAMPLES = 4096

PROGRESS_COLOR = "green"


def cumulative_from_center(values: np.ndarray, axis: int, spacing: float, center: int) -> np.ndarray:
    """
    Composite trapezoid integral of ``values`` along ``axis`` (0-based) from
    the node ``center`` to every node; zero at the center, negative
    orientation to its left.
    """
    points = values.shape[axis]
    forward = cumulative_trapezoid(
        np.take(values, np.arange(center, points), axis=axis), dx=spacing, axis=axis, initial=0
    )
    backward = cumulative_trapezoid(
        np.take(values, np.arange(center, -1, -1), axis=axis), dx=spacing, axis=axis, initial=0
    )
    left = -np.flip(np.take(backward, np.arange(1, center + 1), axis=axis), axis=axis)
    return np.concatenate((left, forward), axis=axis)


def _integration_axes(system: ValidatedSystem) -> Dict[str, int]:
    return {
        component: unknown.index.minimum
        for unknown in system.unknowns
        for component in unknown.components
    }


def _data_fields(
    system: ValidatedSystem,
    grid: Grid,
    axes: Mapping[str, int],
    overrides: Optional[Mapping[str, np.ndarray]],
) -> Dict[str, np.ndarray]:
    """
    Data of each component on its hyperplane {x_i = base_i}, shaped with a
    length-1 axis i so it broadcasts along the integration direction.
    """
    overrides = overrides or {}
    mesh = grid.mesh()
    fields = {}
    for component, axis in axes.items():
        shape = list(grid.shape)
        shape[axis - 1] = 1

        if component in overrides:
            values = np.asarray(overrides[component], dtype=float)
            expected = tuple(s for k, s in enumerate(grid.shape, start=1) if k != axis)
            if values.shape != expected:
                raise DataShapeError(component, values.shape, expected)
            fields[component] = values.reshape(shape)
            continue

        env = {name: values for name, values in mesh.items() if name != f"x{axis}"}
        try:
            values = evaluate(system.data[component], env)
        except ExpressionError as err:
            raise NodeEvaluationError(component, axis, err) from err
        fields[component] = np.broadcast_to(np.asarray(values, dtype=float), shape)
    return fields


def _sweep(
    system: ValidatedSystem,
    grid: Grid,
    axes: Mapping[str, int],
    data: Mapping[str, np.ndarray],
    current: Mapping[str, np.ndarray],
) -> Dict[str, np.ndarray]:
    """One application of the discrete integral map; reads only ``current``."""
    env = dict(grid.mesh())
    env.update(current)
    updated = {}
    for component, axis in axes.items():
        try:
            integrand = evaluate(system.equation(component, axis), env)
        except ExpressionError as err:
            raise NodeEvaluationError(component, axis, err) from err
        integrand = np.broadcast_to(np.asarray(integrand, dtype=float), grid.shape)
        gridaxis = grid.axes[axis - 1]
        updated[component] = data[component] + cumulative_from_center(
            integrand, axis - 1, gridaxis.spacing, gridaxis.center_index
        )
    return updated


def _sup_update(previous: Mapping[str, np.ndarray], updated: Mapping[str, np.ndarray]) -> float:
    return max(float(np.max(np.abs(updated[c] - previous[c]))) for c in updated)


def solve_determined(
    system: ValidatedSystem,
    grid: Grid,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    init: InitMode = InitMode.data_extension,
    data_fields: Optional[Mapping[str, np.ndarray]] = None,
    constants: Optional[Constants] = None,
    progress: bool = False,
    stop: Optional[threading.Event] = None,
) -> GridSolution:
    """
    Picard iteration u <- phi + integral of F(x; u) along each unknown's axis,
    from the base node, with the composite trapezoid rule on ``grid``.

    :param system: a determined system (one prescribed axis per unknown)
    :param grid: tensor grid centered at the system's base point
    :param tol: stop when the sup-norm update is at most this
    :param max_iter: sweep limit
    :param init: starting iterate, the data extended along each axis or zeros
    :param data_fields: optional data per component, given on the component's
        hyperplane (grid shape without its axis); replaces the data expression
    :param constants: estimates; a grid beyond sigma is logged, and L explains non-convergence
    :param progress: show a progress bar
    :param stop: checked before every sweep; once set the solve gives up
    :raises PicardConvergenceError: ``max_iter`` sweeps without convergence
    :raises PicardDivergenceError: the update grew for 5 sweeps in a row
    :raises NodeEvaluationError: a right-hand side is not finite on the grid
    :raises SolveCancelledError: ``stop`` was set
    """
    if not system.is_determined:
        raise ValueError("solve_determined needs a determined system (every |I| = 1)")
    if grid.n != system.n or not np.allclose(grid.base_point, system.base_point, rtol=0, atol=1e-14):
        raise ValueError(
            f"grid centered at {grid.base_point} does not match the base point {system.base_point}"
        )

    if constants is not None and sum(grid.halfwidths) > constants.sigma:
        LOG.warning(
            f"The grid reaches |x - base|_1 = {sum(grid.halfwidths):.3g}, beyond sigma = {constants.sigma:.3g}: "
            "convergence there is not guaranteed"
        )

    axes = _integration_axes(system)
    data = _data_fields(system, grid, axes, data_fields)

    match init:
        case InitMode.data_extension:
            current = {c: np.array(np.broadcast_to(data[c], grid.shape)) for c in axes}
        case InitMode.zeros:
            current = {c: np.zeros(grid.shape) for c in axes}

    history = []
    growth = 0
    with tqdm(
        total=max_iter,
        desc="Picard iteration",
        leave=False,
        disable=not progress,
        colour=PROGRESS_COLOR,
    ) as pbar:
        for iteration in range(1, max_iter + 1):
            if stop is not None and stop.is_set():
                raise SolveCancelledError(iteration - 1)
            updated = _sweep(system, grid, axes, data, current)
            update = _sup_update(current, updated)
            history.append(update)
            current = updated
            pbar.set_postfix(update=f"{update:.2e}")
            pbar.update(1)
            LOG.debug(f"Sweep {iteration}: sup-norm update {update:.3e}")

            if not np.isfinite(update):
                raise PicardDivergenceError(iteration, history, growth)
            if update <= tol:
                LOG.info(f"Picard iteration converged after {iteration} sweep(s) on {grid.shape} nodes")
                return GridSolution(
                    grid=grid,
                    fields=current,
                    iterations=iteration,
                    final_update=update,
                    history=tuple(history),
                    constants=constants,
                    axis_labels=system.axis_labels,
                )

            growth = growth + 1 if len(history) > 1 and update > history[-2] else 0
            if growth >= DIVERGENCE_STREAK:
                raise PicardDivergenceError(iteration, history, growth)

    suspected = None
    if constants is not None:
        suspected = constants.L * max(grid.halfwidths)
    raise PicardConvergenceError(max_iter, history[-1], history, tol, suspected)


def estimate_constants(
    system: ValidatedSystem,
    a: float,
    b: float,
    samples: int = DEFAULT_SAMPLES,
    seed: int = sampling.DEFAULT_SEED,
) -> Constants:
    """
    Sampled estimates of M, L and sigma over |x - base|_1 <= a and
    |U - phi(base)|_1 <= b. These are estimates, not certified bounds.

    :raises SamplingError: a right-hand side fails at a sample point
    """
    if not system.is_determined:
        raise ValueError("estimate_constants needs a determined system (every |I| = 1)")
    if not (a > 0 and b > 0):
        raise ValueError(f"a and b must be positive, got a={a}, b={b}")

    components = system.components
    n, N = system.n, len(components)
    if N == 0:
        raise ValueError("the system has no unknowns")
    x_names = system.spec.x_names
    base = dict(zip(x_names, system.base_point))
    phi_bar = np.array([float(evaluate(system.data[c], base)) for c in components])

    unit = sampling.halton_points(n + 2 * N, samples, seed)
    x = sampling.to_ball(unit[:, :n], system.base_point, a)
    u = sampling.to_ball(unit[:, n : n + N], phi_bar, b)
    # second U-sample sharing x, for difference quotients in U
    v = sampling.to_ball(np.roll(unit[:, n + N :], 1, axis=0), phi_bar, b)

    x_env = sampling.columns(x_names, x)
    env_u = dict(x_env, **sampling.columns(components, u))
    env_v = dict(x_env, **sampling.columns(components, v))
    distance = np.sum(np.abs(u - v), axis=1)
    separated = distance > 0

    M = 0.0
    L = 0.0
    deviation = 0.0
    axes = _integration_axes(system)
    for k, component in enumerate(components):
        rhs = system.equation(component, axes[component])
        f_u = sampling.evaluate_samples(rhs, env_u, samples)
        f_v = sampling.evaluate_samples(rhs, env_v, samples)
        M = max(M, float(np.max(np.abs(f_u))), float(np.max(np.abs(f_v))))
        if np.any(separated):
            quotients = np.abs(f_u - f_v)[separated] / distance[separated]
            L = max(L, float(np.max(quotients)))

        data = sampling.evaluate_samples(system.data[component], x_env, samples)
        deviation = max(deviation, float(np.max(np.abs(data - phi_bar[k]))))

    sigma = a if M == 0 else min(a, b / (2 * M * N))
    within = deviation <= b / (2 * N)
    if not within:
        LOG.warning(f"Data deviate by {deviation:.3g} from their base values, above b/(2N) = {b / (2 * N):.3g}")

    return Constants(
        a=a, b=b, L=L, M=M, sigma=sigma, N=N, data_deviation=deviation, data_within_bound=within
    )
