"""
Deterministic quasi-random sample sets (scrambled Halton, fixed seed) and
evaluation of expressions over them.
"""

from typing import Dict, Mapping, Sequence

import numpy as np
from scipy.stats import qmc

from expression_dsl.evaluator import evaluate
from expression_dsl.types.exceptions import ExpressionError
from expression_dsl.types.expression_nodes import Expr
from picard_solver.types.exceptions import SamplingError

DEFAULT_SEED = 20240611


def halton_points(dimension: int, count: int, seed: int = DEFAULT_SEED, skip: int = 0) -> np.ndarray:
    """``count`` points of [0, 1)^dimension; ``skip`` draws that many first."""
    sampler = qmc.Halton(d=dimension, scramble=True, seed=seed)
    if skip:
        sampler.fast_forward(skip)
    return sampler.random(count)


def to_box(unit: np.ndarray, center: Sequence[float], radii: Sequence[float]) -> np.ndarray:
    return np.asarray(center, dtype=float) + (2 * unit - 1) * np.asarray(radii, dtype=float)


def to_ball(unit: np.ndarray, center: Sequence[float], radius: float) -> np.ndarray:
    """
    Radial map of the cube onto the 1-norm ball of ``radius``: every point
    keeps its direction and its max-norm radius becomes its 1-norm radius.
    The first row is the center itself.
    """
    cube = 2 * unit - 1
    max_norm = np.max(np.abs(cube), axis=1, keepdims=True)
    one_norm = np.sum(np.abs(cube), axis=1, keepdims=True)
    scale = np.divide(max_norm, one_norm, out=np.zeros_like(one_norm), where=one_norm > 0)
    points = np.asarray(center, dtype=float) + radius * cube * scale
    points[0] = center
    return points


def columns(names: Sequence[str], points: np.ndarray) -> Dict[str, np.ndarray]:
    return {name: points[:, k] for k, name in enumerate(names)}


def evaluate_samples(expression: Expr, env: Mapping[str, np.ndarray], count: int) -> np.ndarray:
    """
    Evaluate over all samples at once; on failure find the first offending
    sample and report it.
    """
    try:
        return np.broadcast_to(np.asarray(evaluate(expression, env), dtype=float), (count,))
    except ExpressionError as err:
        for k in range(count):
            point = {
                name: float(np.broadcast_to(values, (count,))[k]) for name, values in env.items()
            }
            try:
                evaluate(expression, point)
            except ExpressionError as point_error:
                raise SamplingError(point, point_error) from point_error
        raise SamplingError({}, err) from err
