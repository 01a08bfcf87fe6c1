"""
File:           __init__.py
Created on:     15/10/26, 10:15 am
"""
from .expansion import ExpansionCoeffs, BoundsClassification, OrderChangingReport, \
    DegenerateConstraintError, InvalidCoefficientsError, expansion_coeffs, eta_series, \
    eta_quantum_quadratic, symmetric_reference_series, reference_eh, fit_expansion, \
    a_bounds_check, order_changing_check
from .classical import ClassicalComparison, ComparatorError, classical_comparators, \
    curzon_ahlborn, eta_low_dissipation_series
