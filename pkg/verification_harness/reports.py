"""
Plain tables (rich) and JSON-ready dictionaries for every report kind.
Key names of the JSON variant are listed in README.md.
"""

from functools import singledispatch
from typing import Iterator, List, Union

from rich.table import Table

from darboux_solver.types.exceptions import describe_path
from darboux_solver.types.report_types import ConsistencyReport, DeltaReport
from integrability.types.report_types import IntegrabilityReport
from picard_solver.types.grid_types import Constants, GridSolution
from verification_harness.types.report_types import CandidateReport, ConvergenceReport, ErrorReport

NestedReport = Union[DeltaReport, ConsistencyReport]


def verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def walk(report: NestedReport) -> Iterator[NestedReport]:
    """The report itself, then every subsystem report depth-first."""
    yield report
    for sub in report.subsystems:
        yield from walk(sub)


def _axes(labels) -> str:
    return "(" + ",".join(str(a) for a in labels) + ")"


def _relabel(report: IntegrabilityReport):
    labels = report.axis_labels
    return (lambda axis: labels[axis - 1]) if labels else (lambda axis: axis)


# ---------------------------------------------------------------- tables


@singledispatch
def render(report) -> Table:
    raise TypeError(f"No table for {type(report).__name__}")


@render.register
def _(report: IntegrabilityReport) -> Table:
    table = Table(title=f"Integrability: {verdict(report.passed)} (tol {report.tol:.1e}, {report.samples} samples)")
    for column in ("I", "i", "j", "residual", "scale", "ratio", "max residual"):
        table.add_column(column, justify="right")
    relabel = _relabel(report)
    for t in report.triples:
        table.add_row(
            _axes(relabel(a) for a in t.index),
            str(relabel(t.i)),
            str(relabel(t.j)),
            f"{t.residual:.3e}",
            f"{t.scale:.3e}",
            f"{t.ratio:.3e}",
            f"{t.max_residual:.3e}",
        )
    for violation in report.violations:
        table.add_row(str(violation), "", "", "", "", "", "")
    return table


@render.register
def _(report: DeltaReport) -> Table:
    table = Table(title=f"Delta residuals: {verdict(report.passed)} (threshold {report.threshold:.3e})")
    for column in ("system", "unknown", "I", "i", "sup"):
        table.add_column(column, justify="right")
    for sub in walk(report):
        for e in sub.entries:
            table.add_row(describe_path(sub.path), e.unknown, _axes(e.index), str(e.axis), f"{e.sup:.3e}")
    return table


@render.register
def _(report: ConsistencyReport) -> Table:
    table = Table(title=f"Intersection consistency: {verdict(report.passed)} (threshold {report.threshold:.3e})")
    for column in ("system", "unknown", "I", "k", "l", "discrepancy"):
        table.add_column(column, justify="right")
    for sub in walk(report):
        for e in sub.entries:
            table.add_row(
                describe_path(sub.path), e.unknown, _axes(e.index), str(e.k), str(e.l), f"{e.discrepancy:.3e}"
            )
    return table


@render.register
def _(report: ErrorReport) -> Table:
    table = Table(title="Errors against the reference")
    for column in ("component", "sup", "rms"):
        table.add_column(column, justify="right")
    for c in report.components:
        table.add_row(c.component, f"{c.sup:.3e}", f"{c.rms:.3e}")
    return table


@render.register
def _(report: ConvergenceReport) -> Table:
    if report.exact:
        summary = "exact"
    else:
        summary = f"order {report.order:.3f}"
    table = Table(title=f"Convergence against {report.reference}: {summary}")
    for column in ("nodes", "spacing", "sup error", "order"):
        table.add_column(column, justify="right")
    for level in report.levels:
        order = "" if level.order is None else f"{level.order:.3f}"
        table.add_row("x".join(map(str, level.points)), f"{level.spacing:.4e}", f"{level.error:.3e}", order)
    return table


@render.register
def _(report: CandidateReport) -> Table:
    table = Table(title=f"Candidate residuals ({report.samples} samples)")
    for column in ("check", "max |residual|", "where"):
        table.add_column(column, justify="right")
    point = ", ".join(f"{k}={v:.4g}" for k, v in report.worst_point.items())
    table.add_row("equations", f"{report.equation_residual:.3e}", f"{report.worst_equation} at {point}")
    table.add_row("data", f"{report.data_residual:.3e}", "")
    return table


@render.register
def _(solution: GridSolution) -> Table:
    points = "x".join(map(str, solution.grid.shape))
    table = Table(title=f"Solution on {points} nodes")
    for column in ("component", "min", "max"):
        table.add_column(column, justify="right")
    for component, values in solution.fields.items():
        table.add_row(component, f"{values.min():.6g}", f"{values.max():.6g}")
    table.caption = f"{solution.iterations} Picard sweep(s), last update {solution.final_update:.3e}"
    return table


@render.register
def _(constants: Constants) -> Table:
    table = Table(title=f"Existence constants (a = {constants.a:.3g}, b = {constants.b:.3g}, N = {constants.N})")
    for column in ("M", "L", "sigma", "data deviation", "below b/(2N)"):
        table.add_column(column, justify="right")
    table.add_row(
        f"{constants.M:.4g}",
        f"{constants.L:.4g}",
        f"{constants.sigma:.4g}",
        f"{constants.data_deviation:.4g}",
        "yes" if constants.data_within_bound else "no",
    )
    return table


# ---------------------------------------------------------------- JSON


@singledispatch
def to_json(report) -> dict:
    raise TypeError(f"No JSON form for {type(report).__name__}")


@to_json.register
def _(report: IntegrabilityReport) -> dict:
    relabel = _relabel(report)
    return {
        "kind": "integrability",
        "passed": report.passed,
        "tol": report.tol,
        "samples": report.samples,
        "max_ratio": report.max_ratio,
        "violations": [str(v).strip() for v in report.violations],
        "triples": [
            {
                "index": [relabel(a) for a in t.index],
                "i": relabel(t.i),
                "j": relabel(t.j),
                "residual": t.residual,
                "scale": t.scale,
                "ratio": t.ratio,
                "max_residual": t.max_residual,
                "point": t.point,
            }
            for t in report.triples
        ],
    }


@to_json.register
def _(report: DeltaReport) -> dict:
    return {
        "kind": "delta",
        "path": list(report.path),
        "passed": report.passed,
        "threshold": report.threshold,
        "max_sup": report.max_sup,
        "entries": [
            {"unknown": e.unknown, "index": list(e.index), "axis": e.axis, "sup": e.sup} for e in report.entries
        ],
        "subsystems": [to_json(sub) for sub in report.subsystems],
    }


@to_json.register
def _(report: ConsistencyReport) -> dict:
    return {
        "kind": "consistency",
        "path": list(report.path),
        "passed": report.passed,
        "threshold": report.threshold,
        "max_discrepancy": report.max_discrepancy,
        "entries": [
            {"unknown": e.unknown, "index": list(e.index), "k": e.k, "l": e.l, "discrepancy": e.discrepancy}
            for e in report.entries
        ],
        "subsystems": [to_json(sub) for sub in report.subsystems],
    }


@to_json.register
def _(constants: Constants) -> dict:
    return {
        "kind": "constants",
        "a": constants.a,
        "b": constants.b,
        "N": constants.N,
        "M": constants.M,
        "L": constants.L,
        "sigma": constants.sigma,
        "data_deviation": constants.data_deviation,
        "data_within_bound": constants.data_within_bound,
    }


@to_json.register
def _(solution: GridSolution) -> dict:
    return {
        "kind": "solution",
        "points": list(solution.grid.shape),
        "halfwidths": list(solution.grid.halfwidths),
        "components": list(solution.components),
        "iterations": solution.iterations,
        "final_update": solution.final_update,
    }


@to_json.register
def _(report: ErrorReport) -> dict:
    return {
        "kind": "errors",
        "sup": report.sup,
        "components": [{"component": c.component, "sup": c.sup, "rms": c.rms} for c in report.components],
    }


@to_json.register
def _(report: ConvergenceReport) -> dict:
    return {
        "kind": "convergence",
        "reference": report.reference,
        "exact": report.exact,
        "order": report.order,
        "levels": [
            {"points": list(level.points), "spacing": level.spacing, "error": level.error, "order": level.order}
            for level in report.levels
        ],
    }


@to_json.register
def _(report: CandidateReport) -> dict:
    return {
        "kind": "candidate",
        "samples": report.samples,
        "residual": report.residual,
        "equation_residual": report.equation_residual,
        "data_residual": report.data_residual,
        "worst_equation": report.worst_equation,
        "worst_point": report.worst_point,
    }


def collect(reports: List) -> List[dict]:
    return [to_json(report) for report in reports]
