"""
File:           expansion.py
Created on:     15/10/26, 10:20 am

Small eta_c expansion of the efficiency at maximal work, eta = eta_c/2 + a eta_c^2 + b eta_c^3.
With d ln|E_h|/d chi = A + B chi + ..., a = A/4 and b = B/8; both follow from the partials of G at
the chi = 0 point (Ec, Eh) = (r, r).
"""
from typing import Optional, Sequence, Tuple, Dict
from dataclasses import dataclass, asdict
import math

import numpy as np

from src.constraint_dsl import ConstraintExpr, IndeterminateSymmetryError, partials, is_symmetric, \
    preset
from src.optimizer import OptimizationProblem, maximize_work, solve_eh
from src.optimizer.problem import DEFAULT_EH_BRACKET
from src.utils.enum import PresetName, SymmetryClass
from src.utils.errors import OttoEngineError
from src.utils.settings import Tolerances, DEFAULT_TOLERANCES
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("universality")

FIT_ETA_GRID = tuple(round(0.01 * k, 2) for k in range(1, 11))


class DegenerateConstraintError(OttoEngineError):
    pass


class InvalidCoefficientsError(OttoEngineError):
    pass


@dataclass(frozen=True)
class ExpansionCoeffs:
    cap_a: float
    cap_b: float            # nan unless the constraint is symmetric
    a: float
    b: float                # nan unless the constraint is symmetric
    symmetric: bool
    valid: bool             # False for order-changing (eta_c dependent) constraints
    reference_eh: float = math.nan

    @property
    def has_cubic(self) -> bool:
        return math.isfinite(self.b)

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


INVALID_COEFFS = ExpansionCoeffs(
    cap_a=math.nan, cap_b=math.nan, a=math.nan, b=math.nan, symmetric=False, valid=False
)


@dataclass(frozen=True)
class BoundsClassification:
    classification: SymmetryClass
    a: float
    g10: float
    g01: float


@dataclass(frozen=True)
class OrderChangingReport:
    order_changing: bool
    boundary_case: bool
    report: str
    eta_closed_form: float = math.nan
    exceeds_ld_upper: Optional[bool] = None


def _first_order(constraint: ConstraintExpr, reference_eh: float):
    derivs = partials(constraint, reference_eh, reference_eh)
    denominator = derivs.g10 + derivs.g01
    if denominator == 0 or abs(denominator) <= 1e-14 * (abs(derivs.g10) + abs(derivs.g01)):
        raise DegenerateConstraintError(
            f"G10 + G01 vanishes for '{constraint.source_text}' at |E_h|={reference_eh:g}"
        )
    return derivs, derivs.g10 / denominator


def _symmetric(constraint: ConstraintExpr, tolerances: Tolerances) -> bool:
    try:
        return is_symmetric(constraint, tolerances=tolerances)
    except IndeterminateSymmetryError as err:
        logger.warning(f"{err}; treating the constraint as asymmetric")
        return False


def expansion_coeffs(
        constraint: ConstraintExpr,
        reference_eh: float,
        tolerances: Tolerances = DEFAULT_TOLERANCES
) -> ExpansionCoeffs:
    """ a = G10 / (4 (G10 + G01)) at chi = 0. The cubic coefficient is only available for symmetric
    constraints: b = (1/32) [1 + r (G11 - G20) / G10] """
    if constraint.references("eta_c"):
        return INVALID_COEFFS
    if not reference_eh > 0:
        raise DegenerateConstraintError(f"Reference |E_h| must be positive, got {reference_eh}")
    derivs, cap_a = _first_order(constraint, reference_eh)
    symmetric = _symmetric(constraint, tolerances)
    b = math.nan
    if symmetric:
        if derivs.g10 == 0:
            raise DegenerateConstraintError(f"G10 vanishes for '{constraint.source_text}'")
        b = (1.0 + reference_eh * (derivs.g11 - derivs.g20) / derivs.g10) / 32.0
    return ExpansionCoeffs(
        cap_a=cap_a,
        cap_b=8.0 * b,
        a=cap_a / 4.0,
        b=b,
        symmetric=symmetric,
        valid=True,
        reference_eh=reference_eh,
    )


def eta_series(eta_c: float, coeffs: ExpansionCoeffs) -> float:
    """ eta_c/2 + a eta_c^2 (+ b eta_c^3 when b is known) """
    if not coeffs.valid:
        raise InvalidCoefficientsError(
            "Expansion coefficients are invalid for an order-changing constraint"
        )
    value = 0.5 * eta_c + coeffs.a * eta_c ** 2
    if coeffs.has_cubic:
        value += coeffs.b * eta_c ** 3
    return value


def eta_quantum_quadratic(eta_c: float, g10: float, g01: float) -> float:
    """ eta_c/2 + eta_c^2 / (4 (1 + G01/G10)) """
    if g10 == 0 or g10 + g01 == 0:
        raise DegenerateConstraintError(f"Quadratic term undefined for G10={g10}, G01={g01}")
    return 0.5 * eta_c + eta_c ** 2 / (4.0 * (1.0 + g01 / g10))


def symmetric_reference_series(eta_c: float) -> float:
    """ Second order efficiency shared by every symmetric constraint """
    return 0.5 * eta_c + eta_c ** 2 / 8.0


def reference_eh(
        constraint: ConstraintExpr,
        g0: float,
        eh_bracket: Tuple[float, float] = DEFAULT_EH_BRACKET,
        tolerances: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """ |E_h| solving G(r, r) = g0 (chi = 0). eta_c plays no role there for a regular constraint """
    problem = OptimizationProblem(
        constraint=constraint, g0=g0, eta_c=0.5, eh_bracket=eh_bracket, tolerances=tolerances
    )
    return solve_eh(problem, 0.0)


def fit_expansion(
        constraint: ConstraintExpr,
        g0: float,
        eta_grid: Sequence[float] = FIT_ETA_GRID,
        extra_orders: int = 2,
        eh_bracket: Tuple[float, float] = DEFAULT_EH_BRACKET,
        tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[float, float]:
    """ Least squares fit of (eta*(eta_c) - eta_c/2) / eta_c^2 against [1, eta_c]; a is the
    intercept and b the slope. extra_orders appends eta_c^2, eta_c^3, ... columns that absorb the
    truncation error of the series on the grid (0 gives the plain straight-line fit) """
    etas = np.asarray(eta_grid, dtype=float)
    optima = []
    for eta_c in etas:
        problem = OptimizationProblem(
            constraint=constraint, g0=g0, eta_c=float(eta_c), eh_bracket=eh_bracket,
            tolerances=tolerances
        )
        optima.append(maximize_work(problem).eta_star)
    targets = (np.asarray(optima) - etas / 2.0) / etas ** 2
    design = np.vander(etas, 2 + extra_orders, increasing=True)
    solution, *_ = np.linalg.lstsq(design, targets, rcond=None)
    logger.debug(f"Fitted expansion of '{constraint.source_text}': {solution}")
    return float(solution[0]), float(solution[1])


def a_bounds_check(
        constraint: ConstraintExpr,
        reference_eh: float = 1.0,
        tolerances: Tolerances = DEFAULT_TOLERANCES
) -> BoundsClassification:
    """ symmetric (a = 1/8), same_sign G10 G01 >= 0 (0 <= a <= 1/4) or opposite_sign """
    derivs, cap_a = _first_order(constraint, reference_eh)
    if _symmetric(constraint, tolerances):
        classification = SymmetryClass.SYMMETRIC
    elif derivs.g10 * derivs.g01 >= 0:
        classification = SymmetryClass.SAME_SIGN
    else:
        classification = SymmetryClass.OPPOSITE_SIGN
    return BoundsClassification(
        classification=classification, a=cap_a / 4.0, g10=derivs.g10, g01=derivs.g01
    )


def _is_preset(constraint: ConstraintExpr, name: PresetName, params: Dict[str, float]) -> bool:
    return constraint.ast == preset(name, params).ast


def order_changing_check(
        constraint: ConstraintExpr,
        eta_c: Optional[float] = None
) -> OrderChangingReport:
    """ Flags constraints whose coefficients depend on eta_c; for those every order of the series
    collapses into the linear term and only the numerical optimiser applies """
    params = dict(constraint.params)
    if constraint.references("eta_c"):
        if "s" in params and _is_preset(constraint, PresetName.S_LINEAR, {"s": params["s"]}) \
                and eta_c is not None:
            s = params["s"]
            eta_s = eta_c / (2.0 - s)
            ld_upper = eta_c / (2.0 - eta_c)
            exceeds = eta_s > ld_upper
            bound = "exceeds" if exceeds else "does not exceed"
            report = (f"order-changing: eta_s = eta_c/(2-s) = {eta_s:.12g} at eta_c={eta_c:g}, "
                      f"s={s:g}; {bound} the low-dissipation upper bound {ld_upper:.12g}")
            return OrderChangingReport(True, s >= 1, report, eta_s, exceeds)
        return OrderChangingReport(
            True, False, "order-changing: constraint depends on eta_c, series expansion invalid"
        )
    if "d" in params and eta_c is not None \
            and _is_preset(constraint, PresetName.D_LINEAR, {"d": params["d"]}):
        d = params["d"]
        if math.isclose(d, eta_c, rel_tol=1e-12, abs_tol=1e-15):
            return OrderChangingReport(
                False, True, f"boundary case d = eta_c = {eta_c:g}: the Taylor series no longer "
                             f"converges"
            )
        if d < eta_c:
            return OrderChangingReport(
                False, True, f"d={d:g} < eta_c={eta_c:g}: series outside its radius of "
                             f"convergence, no interior optimum"
            )
        eta_d = d * eta_c / (2.0 * d - eta_c)
        return OrderChangingReport(
            False, False, f"regular: eta_d = d eta_c/(2d - eta_c) = {eta_d:.12g}", eta_d
        )
    return OrderChangingReport(False, False, "regular: series expansion applies")
