# --------- Recursive Construction Errors ----------

Subsystem = """
    Solving {path} failed:
{cause}
"""

MissingSubsolution = """
    No solution of system {axis} is available to supply the data of {unknown}.
"""
