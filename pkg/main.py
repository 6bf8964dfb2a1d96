import json
import logging
import sys
from contextlib import ExitStack
from typing import List, Optional, Sequence

from rich.console import Console

import arguments_parser.parser as arg_parser
from arguments_parser.settings import RunSettings, load_env_settings, resolve_settings
from darboux_solver.solver import solve_darboux
from darboux_system.model import validate
from darboux_system.spec_file import read_reference_file, read_system_file
from darboux_system.types.exceptions import SystemSpecError
from darboux_system.types.spec_file_types import SystemFile
from darboux_system.types.system_types import ValidatedSystem
from expression_dsl.types.exceptions import ExpressionError
from integrability.checker import check_integrability
from picard_solver.picard import estimate_constants
from picard_solver.types.exceptions import GridSpecError, SamplingError, SolverError
from picard_solver.types.grid_types import Constants, Grid
from verification_harness import reports
from verification_harness.convergence import convergence_study
from verification_harness.residuals import candidate_residual, error_report
from verification_harness.solution_csv import write_solution
from verification_harness.types.exceptions import HarnessError

LOG = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_INTERRUPTED = 130

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def emit(args: dict, produced: List):
    """Print the reports, and copy them to --report when given."""
    with ExitStack() as stack:
        consoles = [Console()]
        report_path = arg_parser.get_report_path(args)
        if report_path:
            file = stack.enter_context(open(report_path, "w", encoding="utf-8"))
            consoles.append(Console(file=file, width=120, no_color=True, highlight=False))

        for console in consoles:
            if arg_parser.wants_json(args):
                print(json.dumps(reports.collect(produced), indent=2), file=console.file)
            else:
                for report in produced:
                    console.print(reports.render(report))


def load_system(args: dict):
    system_file: SystemFile = read_system_file(arg_parser.get_system_path(args))
    # dependency violations are verdicts here, reported by the integrability check
    system = validate(system_file.system, enforce_dependencies=False)
    env = load_env_settings(args[arg_parser.settings_arg_name])
    return system, resolve_settings(args, system_file.settings, env, system.n)


def build_grid(system: ValidatedSystem, settings: RunSettings) -> Grid:
    settings.require_grid()
    return Grid.build(system.base_point, settings.halfwidth, settings.points)


def determined_constants(system: ValidatedSystem, settings: RunSettings) -> Optional[Constants]:
    """Existence constants over the 1-norm ball holding the grid, for determined systems."""
    if not system.is_determined:
        return None
    try:
        return estimate_constants(system, a=sum(settings.halfwidth), b=settings.u_radius, samples=settings.samples)
    except SamplingError as e:
        LOG.warning(f"Constants not estimated: {str(e).strip()}")
        return None


def run_check(args: dict) -> int:
    system, settings = load_system(args)
    report = check_integrability(
        system,
        x_radius=settings.x_radius,
        u_radius=settings.u_radius,
        samples=settings.samples,
        tol=settings.check_tol,
    )
    emit(args, [report])
    return EXIT_PASS if report.passed else EXIT_FAIL


def run_solve(args: dict) -> int:
    system, settings = load_system(args)
    grid = build_grid(system, settings)
    produced = []

    if arg_parser.skip_checks(args):
        LOG.warning("Integrability checks skipped; the Delta report shows whether the solution holds")
    else:
        check = check_integrability(
            system,
            x_radius=settings.x_radius,
            u_radius=settings.u_radius,
            samples=settings.samples,
            tol=settings.check_tol,
        )
        produced.append(check)
        if not check.passed:
            emit(args, produced)
            return EXIT_FAIL

    constants = determined_constants(system, settings)
    if constants is not None:
        produced.append(constants)

    result = solve_darboux(
        system,
        grid,
        tol=settings.picard_tol,
        max_iter=settings.max_iter,
        delta_tol_factor=settings.delta_tol_factor,
        init=settings.init,
        progress=arg_parser.show_progress(args),
        constants=constants,
    )
    produced += [result.solution, result.delta_report, result.consistency_report]

    reference_path = arg_parser.get_reference_path(args)
    if reference_path:
        reference = read_reference_file(reference_path, system.as_spec())
        produced.append(error_report(result.solution, reference.expressions))

    output_path = arg_parser.get_output_path(args)
    if output_path:
        write_solution(result.solution, output_path)

    emit(args, produced)
    return EXIT_PASS if result.passed else EXIT_FAIL


def run_verify(args: dict) -> int:
    system, settings = load_system(args)
    candidate_path = arg_parser.get_candidate_path(args)
    candidate = read_reference_file(candidate_path, system.as_spec())
    report = candidate_residual(
        system,
        candidate.expressions,
        samples=settings.samples,
        x_radius=settings.x_radius,
        path=candidate_path,
    )
    emit(args, [report])
    return EXIT_PASS if report.residual <= settings.check_tol else EXIT_FAIL


def run_convergence(args: dict) -> int:
    system, settings = load_system(args)
    grid = build_grid(system, settings)
    reference_path = arg_parser.get_reference_path(args)
    reference = read_reference_file(reference_path, system.as_spec())
    report = convergence_study(
        system,
        grid,
        reference.expressions,
        levels=arg_parser.get_levels(args),
        tol=settings.picard_tol,
        max_iter=settings.max_iter,
        init=settings.init,
        reference_name=reference_path,
    )
    emit(args, [report])
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = arg_parser.parse_arguments(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_INPUT

    logging.basicConfig(
        format="%(asctime)s %(levelname)-8s %(message)s",
        level=LOG_LEVELS[min(arg_parser.get_verbosity(args), len(LOG_LEVELS) - 1)],
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    try:
        match arg_parser.get_command(args):
            case "check":
                return run_check(args)
            case "solve":
                return run_solve(args)
            case "verify":
                return run_verify(args)
            case "convergence":
                return run_convergence(args)
    except KeyboardInterrupt:
        print("Interrupted by user", file=sys.stderr)
        return EXIT_INTERRUPTED
    except SolverError as e:
        print(str(e).strip(), file=sys.stderr)
        return EXIT_SOLVER
    except (SystemSpecError, ExpressionError, SamplingError, HarnessError, GridSpecError) as e:
        print(str(e).strip(), file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"Cannot access {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
