# --------- Picard Iteration Errors ----------

NoConvergence = """
    Picard iteration did not converge after {iterations} sweep(s).
    Last sup-norm update: {last_update:.3e} (tolerance {tol:.1e}).
    {hint}
"""

ContractionHint = """Suspected L*h = {product:.3g} >= 1: try a smaller box or a larger max_iter."""

NoContractionHint = """Estimate the constants (L, sigma) to check whether the box is too large."""

Divergence = """
    Picard iteration diverges: the sup-norm update grew for {count} consecutive sweeps
    (last updates: {updates}).
"""

NodeEvaluation = """
    Evaluating the right-hand side of {unknown}_x{axis} failed on the grid: {cause}
"""

DataShape = """
    Data for {component} has shape {shape}, expected {expected}.
"""

Cancelled = """
    Solve stopped after {iterations} sweep(s): a sibling subsystem failed.
"""

# --------- Grid Errors ----------

GridSpec = """
    Invalid grid: {reason}
"""

# --------- Sampling Errors ----------

Sampling = """
    Evaluation failed at the sample point {point}: {cause}
"""
