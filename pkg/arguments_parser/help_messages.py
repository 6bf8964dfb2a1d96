"""
Help texts of the darboux command line: the program description, one
line per subcommand and one entry per flag.
"""

# Texts go through RawTextRichHelpFormatter unchanged: keep the line breaks.

PROGRAM_DESCRIPTION = """
    Check, solve and verify first-order PDE systems with prescribed partials
    (Darboux systems) on a grid around a base point.

    Exit codes: 0 pass, 1 failed verdict, 2 bad input, 3 solver did not converge.
"""

HELP_MSG_CHECK = """Decide whether a system satisfies the integrability conditions
example:
check fixtures/frobenius_2d.sys --samples 4096 --tol 1e-10\n\n"""

HELP_MSG_SOLVE = """Solve a system on a grid and report the Delta and consistency checks
example:
solve fixtures/darboux_n3.sys -o solution.csv --report report.txt\n\n"""

HELP_MSG_VERIFY = """Residuals of a closed-form candidate solution
example:
verify fixtures/frobenius_2d.sys --candidate fixtures/frobenius_2d.ref\n\n"""

HELP_MSG_CONVERGENCE = """Errors and observed order on successively halved grids
example:
convergence fixtures/ode_exponential.sys --levels 3 --reference fixtures/ode_exponential.ref\n\n"""

HELP_MSG_SYSTEM = """System file ([vars], [unknown], [equation], [data] sections)\n\n"""

HELP_MSG_SAMPLES = """Count of quasi-random sample points (default = 4096)\n\n"""

HELP_MSG_TOL = """Tolerance: integrability ratio for check, absolute residual for verify,
sup-norm Picard update for solve and convergence
defaults: 1e-10 / 1e-10 / 1e-12\n\n"""

HELP_MSG_MAX_ITER = """Maximum count of Picard sweeps per solve (default = 200)\n\n"""

HELP_MSG_LEVELS = """Count of grid levels, each halving the spacing (default = 3, at least 3)\n\n"""

HELP_MSG_OUTPUT = """CSV file for the solution nodes and fields\n\n"""

HELP_MSG_REPORT = """Text file receiving a copy of the printed reports\n\n"""

HELP_MSG_DELTA_TOL_FACTOR = """Delta and consistency threshold is factor * (spacing^2 + tol)
default: 10\n\n"""

HELP_MSG_JSON = """Print reports as JSON instead of tables\n\n"""

HELP_MSG_SKIP_CHECKS = """Solve even if the integrability check fails
The Delta report then shows where the solution breaks.\n\n"""

HELP_MSG_INIT = """Picard starting field: data_extension or zeros
default: data_extension\n\n"""

HELP_MSG_PROGRESS = """Show a progress bar per Picard solve\n\n"""

HELP_MSG_CANDIDATE = """File of [candidate] expressions, one per unknown component\n\n"""

HELP_MSG_REFERENCE = """File of [reference] expressions used to measure errors\n\n"""

HELP_MSG_HALFWIDTH = """Grid half-width, one value or one per axis
default: [solve] halfwidth of the system file\n\n"""

HELP_MSG_POINTS = """Odd count of grid nodes, one value or one per axis
default: [solve] points of the system file\n\n"""

HELP_MSG_U_RADIUS = """Half-width of the sampled box around the data values (default = 1)\n\n"""

HELP_MSG_SETTINGS = """Defaults file read with python-dotenv (default = settings.env)\n\n"""

HELP_MSG_VERBOSE = """More logging: -v info, -vv debug\n\n"""
