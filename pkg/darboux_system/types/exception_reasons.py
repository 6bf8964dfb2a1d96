# --------- Spec File Errors ----------

SpecFileLine = """
    {path}, line {line}: {message}
"""

UnknownSection = """unknown section [{section}], valid sections: {valid}"""

UnknownKey = """unknown key '{key}' in section [{section}], valid keys: {valid}"""

MissingKey = """missing key '{key}' in section [{section}]"""

BadValue = """bad value for '{key}': {values} ({reason})"""

# --------- Validation Errors ----------

ValidationFailed = """
    The system is not a valid Darboux-form system ({count} violation(s)):
{violations}
"""

Closure = """closure: '{variable}' appears in the equation for {unknown}_x{axis} but is not an unknown of the system"""

Dependency = """dependency: for I={index}, i={axis} the right-hand side of {unknown}_x{axis} depends on '{offending}', which is not in U^I_i"""

DataVariable = """data: the data of {unknown} uses '{variable}', only {allowed} are allowed"""

MissingEquation = """equation: no equation for {unknown}_x{axis} (component {component})"""

UnexpectedEquation = """equation: {unknown}_x{axis} (component {component}) is not prescribed by the declared index {index}"""

MissingData = """data: no data for {unknown} (component {component})"""

BadName = """name: '{name}' {reason}"""

# --------- Multi-index Errors ----------

EmptyRestriction = """
    Nothing to restrict: no unknown has a multi-index I with {axis} in I and I != ({axis}).
"""

AxisNotInIndex = """
    Axis {axis} does not belong to the multi-index {index}.
"""

IndexNotInSystem = """
    The multi-index {index} does not label an unknown of the system.
"""
