"""
Grid solutions as CSV: header x1..xn followed by the scalar components in
declaration order, one row per node with axis 1 varying fastest, 17
significant digits.
"""

import logging
import re

import numpy as np
import pandas as pd

from picard_solver.types.grid_types import Grid, GridAxis, GridSolution
from verification_harness.types.exceptions import SolutionFileError

LOG = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
X_COLUMN = re.compile(r"x(\d+)$")


def solution_frame(solution: GridSolution) -> pd.DataFrame:
    grid = solution.grid
    mesh = np.meshgrid(*(axis.coordinates for axis in grid.axes), indexing="ij")
    columns = {f"x{k}": values.ravel(order="F") for k, values in enumerate(mesh, start=1)}
    for component, values in solution.fields.items():
        columns[component] = np.asarray(values).ravel(order="F")
    return pd.DataFrame(columns)


def write_solution(solution: GridSolution, path: str):
    solution_frame(solution).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    LOG.info(f"Wrote {solution.grid.size} nodes to {path}")


def _axis_from_column(values: np.ndarray, path: str, name: str) -> GridAxis:
    nodes = np.unique(values)
    if nodes.size < 3 or nodes.size % 2 == 0:
        raise SolutionFileError(path, f"{name} takes {nodes.size} values, expected an odd count >= 3")
    center = nodes[nodes.size // 2]
    return GridAxis(float(center), float(nodes[-1] - center), int(nodes.size))


def read_solution(path: str) -> GridSolution:
    """
    Load a file written by :func:`write_solution`. The grid is rebuilt from
    the distinct coordinate values; field values are reproduced exactly.

    :raises SolutionFileError: missing coordinates or a row count that does not fill the grid
    """
    try:
        frame = pd.read_csv(path, dtype=float, float_precision="round_trip")
    except (OSError, ValueError) as err:
        raise SolutionFileError(path, str(err)) from err

    x_columns = [name for name in frame.columns if X_COLUMN.match(name)]
    expected = [f"x{k}" for k in range(1, len(x_columns) + 1)]
    if not x_columns or x_columns != expected or list(frame.columns[: len(x_columns)]) != expected:
        raise SolutionFileError(path, "the header must start with x1..xn")

    grid = Grid(tuple(_axis_from_column(frame[name].to_numpy(), path, name) for name in x_columns))
    if len(frame) != grid.size:
        raise SolutionFileError(path, f"{len(frame)} rows do not fill a {grid.shape} grid")

    fields = {
        name: frame[name].to_numpy().reshape(grid.shape, order="F")
        for name in frame.columns[len(x_columns) :]
    }
    return GridSolution(grid=grid, fields=fields)
