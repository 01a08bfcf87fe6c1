"""
File:           __init__.py
Created on:     13/10/26, 3:05 pm
"""
from .problem import OptimizationProblem, OptimizationResult, OptimizationError, NoSolutionError, \
    AmbiguousConstraintError, SingularConstraintError, RESULT_COLUMNS
from .work_optimizer import solve_eh, log_derivative_eh, optimality_residual, maximize_work, \
    optimize_preset
from .closed_form import UnknownClosedFormError, closed_form_efficiency
