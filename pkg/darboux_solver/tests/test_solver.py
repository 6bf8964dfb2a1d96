import asyncio
import os
import threading
import unittest

import numpy as np

from darboux_solver.solver import (
    _gather_subsystems,
    assemble_data_for_system_n,
    delta_residuals,
    intersection_consistency,
    residual_threshold,
    solve_darboux,
)
from darboux_solver.types.exceptions import MissingSubsolutionError, SubsystemError
from darboux_solver.types.report_types import ConsistencyReport, DarbouxResult, DeltaReport
from darboux_system.model import restrict_to_hyperplane, validate
from darboux_system.spec_file import read_reference_file, read_system_file, read_system_text
from darboux_system.types.multi_index import MultiIndex
from darboux_system.types.system_types import SystemSpec, UnknownSpec
from expression_dsl.calculus import simplify, substitute
from expression_dsl.evaluator import evaluate
from expression_dsl.types.expression_nodes import Number, Variable
from picard_solver.picard import solve_determined
from picard_solver.types.exceptions import (
    DataShapeError,
    PicardConvergenceError,
    PicardDivergenceError,
    SolveCancelledError,
)
from picard_solver.types.grid_types import Grid

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, os.pardir, "fixtures")
TOL = 1e-12


def load(name, points=None):
    system_file = read_system_file(os.path.join(FIXTURES, name + ".sys"))
    system = validate(system_file.system)
    settings = system_file.settings
    grid = Grid.build(system.base_point, settings.halfwidth, points or settings.points)
    return system, grid


def reference_errors(name, system, solution):
    reference = read_reference_file(os.path.join(FIXTURES, name + ".ref"), system.as_spec())
    mesh = solution.grid.mesh()
    return {
        component: float(np.max(np.abs(solution.fields[component] - evaluate(expression, mesh))))
        for component, expression in reference.expressions.items()
    }


def restrict_to_data_hyperplane(system, solution, component):
    """The field on {x_I = base_I} and the data evaluated there."""
    unknown = system.unknown_of(component)
    values = solution.fields[component]
    env = {}
    for axis in range(system.n, 0, -1):
        coordinates = solution.grid.axes[axis - 1].coordinates
        if axis in unknown.index:
            values = np.take(values, solution.grid.axes[axis - 1].center_index, axis=axis - 1)
        else:
            shape = [1] * (system.n - len(unknown.index))
            position = len([a for a in range(1, axis) if a not in unknown.index])
            shape[position] = coordinates.size
            env[f"x{axis}"] = coordinates.reshape(shape)
    expected = np.broadcast_to(evaluate(system.data[component], env), values.shape)
    return values, expected


class SolverTestFrobenius(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.system, cls.grid = load("frobenius_2d")
        cls.result = solve_darboux(cls.system, cls.grid, tol=TOL)

    def test_matches_exponential(self):
        errors = reference_errors("frobenius_2d", self.system, self.result.solution)
        self.assertLessEqual(errors["u"], 5e-4)

    def test_single_delta_entry(self):
        report = self.result.delta_report
        self.assertEqual(len(report.entries), 1)
        entry = report.entries[0]
        self.assertEqual((entry.index, entry.axis), ((1, 2), 2))
        self.assertLessEqual(entry.sup, 10 * (self.grid.max_spacing**2 + TOL))
        self.assertTrue(report.passed)

    def test_consistency_at_the_base_point(self):
        entries = self.result.consistency_report.entries
        self.assertEqual([(e.k, e.l) for e in entries], [(1, 2)])
        self.assertEqual(entries[0].discrepancy, 0.0)

    def test_consistency_detects_a_shifted_subsolution(self):
        subsolutions = {}
        for axis in (1, 2):
            line = solve_determined(restrict_to_hyperplane(self.system, axis), self.grid.drop_axis(axis), tol=TOL)
            subsolutions[axis] = DarbouxResult(line, DeltaReport(threshold=0.0), ConsistencyReport(threshold=0.0))
        threshold = residual_threshold(self.grid, TOL, 10)
        self.assertTrue(intersection_consistency(self.system, subsolutions, threshold).passed)

        shifted = subsolutions[2].solution
        shifted.fields = {"u__r2": shifted.fields["u__r2"] + 1e-3}
        report = intersection_consistency(self.system, subsolutions, threshold)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.entries[0].discrepancy, 1e-3, places=12)

    def test_data_on_first_hyperplane_comes_from_system_1(self):
        restricted = restrict_to_hyperplane(self.system, 1)
        line = solve_determined(restricted, self.grid.drop_axis(1), tol=TOL)
        np.testing.assert_array_equal(
            self.result.solution.on_hyperplane("u", 1), line.fields["u__r1"]
        )


class SolverTestSevenUnknowns(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.system, cls.grid = load("darboux_n3")
        cls.result = solve_darboux(cls.system, cls.grid, tol=TOL)

    def test_reproduces_manufactured_fields(self):
        errors = reference_errors("darboux_n3", self.system, self.result.solution)
        self.assertEqual(set(errors), set(self.system.components))
        for component, error in errors.items():
            with self.subTest(component=component):
                self.assertLessEqual(error, 10 * self.grid.max_spacing**2)

    def test_delta_entries_cover_the_non_min_axes(self):
        report = self.result.delta_report
        self.assertEqual(
            {(e.unknown, e.axis) for e in report.entries},
            {("p", 3), ("q", 3), ("r", 2), ("s", 2), ("s", 3)},
        )
        self.assertTrue(report.passed)
        self.assertLessEqual(report.max_sup, residual_threshold(self.grid, TOL, 10))

    def test_consistency(self):
        report = self.result.consistency_report
        self.assertTrue(report.passed)
        pairs = {(e.unknown, e.k, e.l) for e in report.entries}
        self.assertIn(("s", 1, 2), pairs)
        self.assertIn(("s", 2, 3), pairs)

    def test_nested_reports_are_labelled(self):
        report = self.result.delta_report
        self.assertEqual([sub.path for sub in report.subsystems], [(1,), (2,), (3,)])
        self.assertEqual([sub.path for sub in report.subsystems[0].subsystems], [(1, 2), (1, 3)])

    def test_data_attainment(self):
        for component in self.system.components:
            with self.subTest(component=component):
                values, expected = restrict_to_data_hyperplane(
                    self.system, self.result.solution, component
                )
                np.testing.assert_allclose(values, expected, rtol=0, atol=1e-14)

    def test_alternative_system_2(self):
        """
        The determined system for p, r, s on {x2 = 0} (p along x3, r and s
        along x1), with s data taken from system 1, gives the same p-data.
        """
        spec = self.system.as_spec()
        pin = {"x1": Variable("x1"), "x2": Number(0.0), "x3": Variable("x2")}
        v_bar = {"v": self.system.data["v"]}

        def copy(name, axis):
            return simplify(substitute(substitute(spec.equations[(name, axis, 1)], v_bar), pin))

        alternative = validate(
            SystemSpec(
                n=2,
                base_point=(0.0, 0.0),
                unknowns=(
                    UnknownSpec("p", MultiIndex.of(2, 2)),
                    UnknownSpec("r", MultiIndex.of(2, 1)),
                    UnknownSpec("s", MultiIndex.of(2, 1)),
                ),
                equations={("p", 2, 1): copy("p", 3), ("r", 1, 1): copy("r", 1), ("s", 1, 1): copy("s", 1)},
                data={
                    ("p", 1): substitute(spec.data[("p", 1)], pin),
                    ("r", 1): substitute(spec.data[("r", 1)], pin),
                    ("s", 1): Number(1.0),
                },
            )
        )
        system_1 = solve_darboux(restrict_to_hyperplane(self.system, 1), self.grid.drop_axis(1), tol=TOL)
        s_line = system_1.solution.on_hyperplane("s__r1", 1)

        grid_xz = self.grid.drop_axis(2)
        checked = solve_determined(alternative, grid_xz, tol=TOL, data_fields={"s": s_line})
        np.testing.assert_allclose(
            checked.fields["p"],
            self.result.solution.on_hyperplane("p", 2),
            rtol=0,
            atol=10 * self.grid.max_spacing**2,
        )


class SolverTestRecursion(unittest.TestCase):
    def test_determined_system_is_delegated(self):
        system, grid = load("oscillators")
        result = solve_darboux(system, grid, tol=TOL)
        direct = solve_determined(system, grid, tol=TOL)
        for component in system.components:
            np.testing.assert_array_equal(result.solution.fields[component], direct.fields[component])
        self.assertEqual(result.delta_report.entries, ())
        self.assertTrue(result.passed)

    def test_linear_coupled_example_is_exact(self):
        system, grid = load("coupled_linear")
        result = solve_darboux(system, grid, tol=TOL)
        for component, error in reference_errors("coupled_linear", system, result.solution).items():
            with self.subTest(component=component):
                self.assertLessEqual(error, 1e-12)
        self.assertTrue(result.passed)

    def test_driven_exponential(self):
        system, grid = load("driven_exponential")
        result = solve_darboux(system, grid, tol=TOL)
        errors = reference_errors("driven_exponential", system, result.solution)
        self.assertLessEqual(max(errors.values()), 10 * grid.max_spacing**2)
        self.assertTrue(result.passed)

    def test_frobenius_3d(self):
        system, grid = load("frobenius_3d")
        result = solve_darboux(system, grid, tol=TOL)
        errors = reference_errors("frobenius_3d", system, result.solution)
        self.assertLessEqual(errors["u"], 10 * grid.max_spacing**2)
        self.assertEqual(len(result.delta_report.entries), 2)
        self.assertTrue(result.passed)

    def test_non_integrable_systems_fail_the_delta_check(self):
        for name in ("frobenius_2d_fault", "darboux_n3_fault"):
            with self.subTest(fixture=name):
                system, grid = load(name, points=(17,) * (2 if name.startswith("frob") else 3))
                result = solve_darboux(system, grid, tol=TOL)
                self.assertFalse(result.delta_report.passed)
                self.assertGreaterEqual(result.delta_report.max_sup, 0.01)

    def test_subsystem_failure_names_its_path(self):
        system, grid = load("frobenius_2d")
        with self.assertRaises(SubsystemError) as context:
            solve_darboux(system, grid, tol=TOL, max_iter=2)
        self.assertIn(context.exception.path, ((1,), (2,)))

    def test_failure_of_the_last_restricted_system_is_labelled(self):
        # stiff along x1 only: the slice {x2 = 0} cannot converge, the slice {x1 = 0} can
        system = validate(
            read_system_text(
                """
                [vars]      n = 2   base = 0 0
                [unknown]   name = u   index = 1 2
                [equation]  unknown = u  axis = 1  rhs = "40*u"
                [equation]  unknown = u  axis = 2  rhs = "u"
                [data]      unknown = u  expr = "1"
                """
            ).system
        )
        grid = Grid.build((0.0, 0.0), (0.3, 0.3), (17, 17))
        with self.assertRaises(SubsystemError) as context:
            solve_darboux(system, grid, tol=TOL, max_iter=30)
        self.assertEqual(context.exception.path, (2,))
        self.assertIsInstance(context.exception.cause, (PicardConvergenceError, PicardDivergenceError))

    def test_first_failure_stops_and_awaits_the_siblings(self):
        stop = threading.Event()
        finished = []

        async def failing():
            raise SubsystemError((1,), PicardDivergenceError(6, [1.0, 2.0], 1))

        async def sibling():
            await asyncio.to_thread(stop.wait, 10)
            finished.append(stop.is_set())
            raise SolveCancelledError(3)

        with self.assertRaises(SubsystemError) as context:
            asyncio.run(_gather_subsystems([sibling(), failing()], stop))
        self.assertEqual(context.exception.path, (1,))
        self.assertEqual(finished, [True])

    def test_set_stop_event_cancels_a_solve(self):
        system, grid = load("zero_rhs")
        stop = threading.Event()
        stop.set()
        with self.assertRaises(SolveCancelledError) as context:
            solve_determined(system, grid, stop=stop)
        self.assertEqual(context.exception.iterations, 0)

    def test_missing_subsolution(self):
        system, grid = load("frobenius_2d", points=(9, 9))
        with self.assertRaises(MissingSubsolutionError):
            assemble_data_for_system_n(system, {}, grid)

    def test_subsolution_on_another_grid_is_a_solver_error(self):
        system, grid = load("frobenius_2d", points=(9, 9))
        line = solve_determined(restrict_to_hyperplane(system, 1), Grid.build((0.0,), (0.3,), (5,)), tol=TOL)
        subsolutions = {1: DarbouxResult(line, DeltaReport(threshold=0.0), ConsistencyReport(threshold=0.0))}
        with self.assertRaises(DataShapeError) as context:
            assemble_data_for_system_n(system, subsolutions, grid)
        self.assertEqual((context.exception.shape, context.exception.expected), ((5,), (9,)))

    def test_delta_report_of_a_determined_system_is_empty(self):
        system, grid = load("zero_rhs")
        report = delta_residuals(system, solve_determined(system, grid))
        self.assertEqual(report.entries, ())
        self.assertTrue(report.passed)


if __name__ == "__main__":
    unittest.main()
