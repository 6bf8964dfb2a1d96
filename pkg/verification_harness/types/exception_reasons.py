# --------- Candidate / Reference Errors ----------

CandidateComponents = """
    {kind} file {path} does not match the system:
    missing: {missing}
    unexpected: {unexpected}
"""

CandidateVariables = """
    {kind} expression for {component} may only use x1..x{n}, found: {names}
"""

# --------- Solution File Errors ----------

SolutionFile = """
    Cannot read the solution file {path}: {message}
"""

# --------- Convergence Study Errors ----------

TooFewLevels = """
    A convergence study needs at least 3 grid levels, got {levels}.
"""

ConvergenceLevel = """
    Grid level {level} ({points} nodes per axis) failed:
{cause}
"""

# --------- Settings Errors ----------

MissingSetting = """
    No value for {name}: pass {flag} or add it to the [{section}] section of the system file.
"""

InvalidSetting = """
    Invalid {name}: {value} ({requirement}).
"""
