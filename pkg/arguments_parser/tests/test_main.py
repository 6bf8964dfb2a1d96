import contextlib
import io
import json
import os
import tempfile
import unittest

import pandas as pd

import arguments_parser.parser as arg_parser
from arguments_parser.settings import load_env_settings, resolve_settings
from darboux_system.types.spec_file_types import FileSettings
from main import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_SOLVER, main
from picard_solver.types.grid_types import InitMode
from verification_harness.types.exceptions import InvalidSettingError, MissingSettingError

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, os.pardir, "fixtures")
PASSING = ("frobenius_2d", "frobenius_3d", "driven_exponential", "coupled_linear", "darboux_n3", "oscillators")
FAULTS = ("frobenius_2d_fault", "driven_exponential_fault", "coupled_linear_fault", "darboux_n3_fault")


def fixture(name, suffix=".sys"):
    return os.path.join(FIXTURES, name + suffix)


def run(*argv):
    """Exit code and captured stdout of one CLI invocation."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class MainTestCheck(unittest.TestCase):
    def test_passing_fixtures_exit_0(self):
        for name in PASSING:
            with self.subTest(fixture=name):
                code, _, _ = run("check", fixture(name), "--samples", "1024")
                self.assertEqual(code, EXIT_PASS)

    def test_fault_fixtures_exit_1(self):
        for name in FAULTS:
            with self.subTest(fixture=name):
                code, _, _ = run("check", fixture(name), "--samples", "1024")
                self.assertEqual(code, EXIT_FAIL)

    def test_structural_fault_names_the_violation(self):
        code, out, _ = run("check", fixture("driven_exponential_fault"), "--json")
        self.assertEqual(code, EXIT_FAIL)
        report = json.loads(out)[0]
        self.assertEqual(report["kind"], "integrability")
        self.assertEqual(report["samples"], 0)
        self.assertTrue(report["violations"])

    def test_missing_file_is_an_input_error(self):
        code, _, err = run("check", fixture("no_such_system"))
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("no_such_system", err)

    def test_usage_error(self):
        self.assertEqual(run("integrate", fixture("frobenius_2d"))[0], EXIT_INPUT)
        self.assertEqual(run("convergence", fixture("ode_exponential"))[0], EXIT_INPUT)


class MainTestSolve(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def test_solve_writes_csv_and_report(self):
        code, _, _ = run(
            "solve",
            fixture("frobenius_2d"),
            "--points", "33",
            "-o", self.path("solution.csv"),
            "--report", self.path("report.txt"),
            "--reference", fixture("frobenius_2d", ".ref"),
        )
        self.assertEqual(code, EXIT_PASS)
        frame = pd.read_csv(self.path("solution.csv"))
        self.assertEqual(list(frame.columns), ["x1", "x2", "u"])
        self.assertEqual(len(frame), 33 * 33)
        with open(self.path("report.txt")) as file:
            text = file.read()
        self.assertIn("Delta residuals: PASS", text)
        self.assertIn("Intersection consistency: PASS", text)

    def test_json_reports(self):
        code, out, _ = run("solve", fixture("coupled_linear"), "--points", "17", "--json")
        self.assertEqual(code, EXIT_PASS)
        kinds = [report["kind"] for report in json.loads(out)]
        self.assertEqual(kinds, ["integrability", "solution", "delta", "consistency"])

    def test_determined_solve_reports_constants(self):
        code, out, _ = run("solve", fixture("ode_exponential"), "--points", "65", "--json")
        self.assertEqual(code, EXIT_PASS)
        produced = json.loads(out)
        self.assertEqual([report["kind"] for report in produced][:3], ["integrability", "constants", "solution"])
        constants = produced[1]
        self.assertAlmostEqual(constants["a"], 0.5)
        self.assertEqual(constants["N"], 1)
        self.assertTrue(constants["data_within_bound"])
        self.assertLessEqual(constants["sigma"], constants["a"])

    def test_failed_check_stops_before_solving(self):
        code, out, _ = run("solve", fixture("frobenius_2d_fault"), "--points", "17", "--json")
        self.assertEqual(code, EXIT_FAIL)
        self.assertEqual([report["kind"] for report in json.loads(out)], ["integrability"])

    def test_skip_checks_shows_the_delta_failure(self):
        code, out, _ = run(
            "solve", fixture("frobenius_2d_fault"), "--points", "17", "--skip-checks", "--json"
        )
        self.assertEqual(code, EXIT_FAIL)
        delta = json.loads(out)[1]
        self.assertEqual(delta["kind"], "delta")
        self.assertFalse(delta["passed"])
        self.assertGreaterEqual(delta["max_sup"], 0.01)

    def test_non_convergence_exits_3(self):
        code, _, err = run("solve", fixture("ode_exponential"), "--points", "65", "--max-iter", "2")
        self.assertEqual(code, EXIT_SOLVER)
        self.assertIn("did not converge", err)

    def test_even_point_count_is_an_input_error(self):
        self.assertEqual(run("solve", fixture("ode_exponential"), "--points", "64")[0], EXIT_INPUT)

    def test_non_positive_radius_is_an_input_error(self):
        code, _, err = run("check", fixture("frobenius_2d"), "--u-radius", "0")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("U-radius", err)


class MainTestVerifyAndConvergence(unittest.TestCase):
    def test_verify_exact_candidate(self):
        code, _, _ = run(
            "verify", fixture("frobenius_2d"), "--candidate", fixture("frobenius_2d", ".ref"), "--samples", "512"
        )
        self.assertEqual(code, EXIT_PASS)

    def test_verify_rejects_a_wrong_candidate(self):
        # the frobenius reference is no solution of the perturbed system
        code, _, _ = run(
            "verify", fixture("frobenius_2d_fault"), "--candidate", fixture("frobenius_2d", ".ref")
        )
        self.assertEqual(code, EXIT_FAIL)

    def test_convergence_table(self):
        code, out, _ = run(
            "convergence",
            fixture("ode_exponential"),
            "--points", "65",
            "--levels", "3",
            "--reference", fixture("ode_exponential", ".ref"),
            "--json",
        )
        self.assertEqual(code, EXIT_PASS)
        report = json.loads(out)[0]
        self.assertEqual([level["points"] for level in report["levels"]], [[65], [129], [257]])
        self.assertGreaterEqual(report["order"], 1.8)
        self.assertLessEqual(report["order"], 2.2)

    def test_too_few_levels(self):
        code, _, _ = run(
            "convergence", fixture("ode_exponential"), "--levels", "2", "--reference", fixture("ode_exponential", ".ref")
        )
        self.assertEqual(code, EXIT_INPUT)


class SettingsTest(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.env_path = os.path.join(self.directory.name, "settings.env")
        with open(self.env_path, "w") as file:
            file.write("DARBOUX_SAMPLES=128\nDARBOUX_PICARD_TOL=1e-9\nDARBOUX_MAX_ITER=50\n")

    def tearDown(self):
        self.directory.cleanup()

    def resolve(self, argv, file_settings=None, n=2):
        args = arg_parser.parse_arguments(argv)
        env = load_env_settings(self.env_path)
        return resolve_settings(args, file_settings or FileSettings(), env, n)

    def test_precedence(self):
        settings = self.resolve(
            ["solve", "system.sys", "--max-iter", "7"],
            FileSettings(tol=1e-11, halfwidth=(0.3,), points=(17,)),
        )
        self.assertEqual(settings.max_iter, 7)
        self.assertEqual(settings.picard_tol, 1e-11)
        self.assertEqual(settings.samples, 128)
        self.assertEqual(settings.u_radius, 1.0)
        self.assertEqual(settings.halfwidth, (0.3, 0.3))
        self.assertEqual(settings.x_radius, (0.3, 0.3))
        self.assertEqual(settings.init, InitMode.data_extension)

    def test_tol_flag_depends_on_the_command(self):
        check = self.resolve(["check", "system.sys", "--tol", "1e-6"])
        solve = self.resolve(["solve", "system.sys", "--tol", "1e-6"])
        self.assertEqual((check.check_tol, check.picard_tol), (1e-6, 1e-9))
        self.assertEqual((solve.check_tol, solve.picard_tol), (1e-10, 1e-6))

    def test_missing_grid(self):
        settings = self.resolve(["solve", "system.sys"])
        with self.assertRaises(MissingSettingError):
            settings.require_grid()

    def test_axis_count_mismatch(self):
        with self.assertRaises(MissingSettingError):
            self.resolve(["solve", "system.sys", "--points", "9", "17", "33"])

    def test_non_positive_values_are_rejected(self):
        with self.assertRaises(InvalidSettingError) as context:
            self.resolve(["check", "system.sys", "--u-radius", "0"])
        self.assertEqual(context.exception.name, "U-radius")
        with self.assertRaises(InvalidSettingError):
            self.resolve(["solve", "system.sys", "--halfwidth", "-0.1"])

    def test_missing_settings_file(self):
        self.assertEqual(load_env_settings(os.path.join(self.directory.name, "absent.env")), {})


if __name__ == "__main__":
    unittest.main()
