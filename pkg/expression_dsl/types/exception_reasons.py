# --------- Syntax Errors ----------

UnexpectedToken = """
    Unexpected {found} at offset {offset}.
    Expected one of: {expected}
"""

UnknownFunction = """
    Unknown function '{name}' at offset {offset}.
    Available functions: {available}
"""

# --------- Evaluation Errors ----------

UnboundVariable = """
    Variable '{name}' is not bound in the evaluation environment.
"""

NonFiniteResult = """
    Evaluation of a {kind} produced a non-finite value at {count} point(s).
"""
