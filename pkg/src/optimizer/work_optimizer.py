"""
File:           work_optimizer.py
Created on:     13/10/26, 3:40 pm

One dimensional maximisation of the ultra-hot work of parallel spectra. The hot norm r(chi) is the
positive root of G((1 - chi) r, r) = g0; the work is W(chi) = k beta_c chi (eta_c - chi) r^2 / N.
"""
from typing import List, Tuple, Optional, Mapping
import math

import numpy as np
from scipy import optimize

from src.constraint_dsl import ConstraintDomainError, evaluate, evaluate_array, partials, preset
from src.optimizer.problem import OptimizationProblem, OptimizationResult, OptimizationError, \
    NoSolutionError, AmbiguousConstraintError, SingularConstraintError, DEFAULT_EH_BRACKET, \
    result_from
from src.thermal_cycle import parallel_work
from src.utils.errors import NotAnEngineError
from src.utils.settings import Tolerances, DEFAULT_TOLERANCES
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("optimizer")

SOLVER_ERRORS = (NoSolutionError, AmbiguousConstraintError, SingularConstraintError,
                 ConstraintDomainError)


def _sign_changes(values: np.ndarray) -> List[int]:
    """ Indices i with a root in [i, i + 1]; pairs with a nan end are ignored """
    finite = np.isfinite(values)
    pairs = finite[:-1] & finite[1:]
    with np.errstate(invalid="ignore"):
        crossing = pairs & (np.sign(values[:-1]) * np.sign(values[1:]) < 0)
        zeros = finite & (values == 0)
    return sorted(set(np.flatnonzero(crossing).tolist()) | set(np.flatnonzero(zeros).tolist()))


def _residuals(problem: OptimizationProblem, chi: float, grid: np.ndarray) -> np.ndarray:
    return evaluate_array(problem.constraint, (1.0 - chi) * grid, grid) - problem.g0


def _outer_roots(
        problem: OptimizationProblem,
        chi: float,
        window: Tuple[float, float],
        limits: Tuple[float, float]
) -> int:
    """ Roots between the search window and the limits of the bracket expansion. A zero on the
    shared window end belongs to the window scan and is not counted again """
    points = problem.tolerances.root_scan_points
    count = 0
    for start, stop, shared in ((limits[0], window[0], points - 1), (window[1], limits[1], 0)):
        if not start < stop:
            continue
        residuals = _residuals(problem, chi, np.geomspace(start, stop, points))
        count += sum(1 for index in _sign_changes(residuals)
                     if not (index == shared and residuals[index] == 0))
    return count


def solve_eh(problem: OptimizationProblem, chi: float) -> float:
    """ |E_h| at compression deviation chi, by a log-spaced sign scan followed by Brent's method.
    The window grows by bracket_factor until it holds a root; the rest of the expansion range is
    then scanned as well so that a second root anywhere in it raises AmbiguousConstraintError """
    if not 0 <= chi < 1:
        raise OptimizationError(f"chi must be in [0, 1), got {chi}")
    tol = problem.tolerances
    lo, hi = problem.eh_bracket
    max_expansions = int(math.ceil(tol.bracket_decades / math.log10(tol.bracket_factor)))
    limits = (lo / tol.bracket_factor ** max_expansions, hi * tol.bracket_factor ** max_expansions)
    for expansion in range(max_expansions + 1):
        grid = np.geomspace(lo, hi, tol.root_scan_points)
        residuals = _residuals(problem, chi, grid)
        crossings = _sign_changes(residuals)
        if crossings:
            count = len(crossings) + _outer_roots(problem, chi, (lo, hi), limits)
            if count > 1:
                raise AmbiguousConstraintError(
                    f"'{problem.label}' = {problem.g0:g} has {count} solutions for |E_h| at "
                    f"chi={chi:g} in [{limits[0]:.3g}, {limits[1]:.3g}]"
                )
            index = crossings[0]
            if residuals[index] == 0:
                return float(grid[index])
            return _refine(problem, chi, grid[index], grid[index + 1])
        lo, hi = lo / tol.bracket_factor, hi * tol.bracket_factor
    raise NoSolutionError(
        f"'{problem.label}' = {problem.g0:g} has no positive solution for |E_h| at chi={chi:g}"
    )


def _refine(problem: OptimizationProblem, chi: float, a: float, b: float) -> float:
    c = problem.constraint

    def residual(r: float) -> float:
        return evaluate(c, (1.0 - chi) * r, r) - problem.g0

    root, info = optimize.brentq(residual, a, b, xtol=1e-300, full_output=True)
    misfit = abs(residual(root))
    if misfit > problem.tolerances.root_rel * (1.0 + abs(problem.g0)):
        logger.warning(f"|E_h| root at chi={chi:g} leaves |G - g0| = {misfit:.3e}")
    logger.debug(f"solve_eh chi={chi:.12g}: r={root:.17g} in {info.iterations} iterations")
    return float(root)


def log_derivative_eh(problem: OptimizationProblem, chi: float) -> float:
    """ d ln|E_h| / d chi = G10 / ((1 - chi) G10 + G01) at (Ec, Eh) = ((1 - chi) r, r) """
    r = solve_eh(problem, chi)
    derivs = partials(problem.constraint, (1.0 - chi) * r, r)
    denominator = (1.0 - chi) * derivs.g10 + derivs.g01
    scale = abs((1.0 - chi) * derivs.g10) + abs(derivs.g01)
    if scale == 0 or abs(denominator) <= 1e-14 * scale:
        raise SingularConstraintError(
            f"'{problem.label}' cannot be solved for |E_h| near chi={chi:g} (dG/dEh along the "
            f"constraint vanishes)"
        )
    return derivs.g10 / denominator


def optimality_residual(problem: OptimizationProblem, chi: float) -> float:
    """ Half of d ln W / d chi; zero at a stationary point of the work """
    if not 0 < chi < problem.eta_c:
        raise OptimizationError(f"chi must be in (0, eta_c={problem.eta_c}), got {chi}")
    eta_c = problem.eta_c
    return log_derivative_eh(problem, chi) + (eta_c - 2.0 * chi) / (2.0 * chi * (eta_c - chi))


class _WorkCurve:
    """ W(chi) with evaluation counting; nan where the constraint has no solution """

    def __init__(self, problem: OptimizationProblem):
        self._problem = problem
        self.evaluations = 0

    def eh(self, chi: float) -> float:
        self.evaluations += 1
        try:
            return solve_eh(self._problem, chi)
        except SOLVER_ERRORS as err:
            logger.debug(f"No |E_h| at chi={chi:.6g}: {err}")
            return math.nan

    def work(self, chi: float, eh: Optional[float] = None) -> float:
        p = self._problem
        eh = self.eh(chi) if eh is None else eh
        if math.isnan(eh):
            return math.nan
        return parallel_work(chi, eh ** 2, p.beta_c, p.eta_c, p.xi, p.n_levels)

    def residual(self, chi: float) -> float:
        self.evaluations += 1
        try:
            return optimality_residual(self._problem, chi)
        except SOLVER_ERRORS:
            return math.nan


def _scan_maxima(works: np.ndarray) -> List[int]:
    """ Scan indices that are at least as large as their finite neighbours """
    maxima = []
    for index, value in enumerate(works):
        if not np.isfinite(value) or value <= 0:
            continue
        neighbours = [works[j] for j in (index - 1, index + 1)
                      if 0 <= j < len(works) and np.isfinite(works[j])]
        if all(value >= other for other in neighbours):
            maxima.append(index)
    return maxima


def _golden(curve: _WorkCurve, a: float, b: float, c: float, tol: Tolerances) -> float:
    def negative_work(chi: float) -> float:
        value = curve.work(chi)
        return -value if math.isfinite(value) else math.inf

    try:
        found = optimize.minimize_scalar(
            negative_work, bracket=(a, b, c), method="golden", options={"xtol": tol.golden_tol}
        )
    except (ValueError, RuntimeError) as err:
        logger.debug(f"Golden search on ({a:.6g}, {b:.6g}, {c:.6g}) skipped: {err}")
        return b
    return float(found.x) if a < found.x < c else b


def _polish(curve: _WorkCurve, a: float, c: float, guess: float) -> Tuple[float, bool]:
    """ Root of the optimality residual in (a, c); falls back to the golden estimate """
    res_a, res_c = curve.residual(a), curve.residual(c)
    if not (math.isfinite(res_a) and math.isfinite(res_c)) or res_a * res_c > 0:
        logger.warning(f"Residual does not change sign on ({a:.6g}, {c:.6g}), keeping "
                       f"chi={guess:.12g}")
        return guess, False
    if res_a == 0 or res_c == 0:
        return (a if res_a == 0 else c), True
    chi = optimize.brentq(curve.residual, a, c, xtol=1e-300)
    return float(chi), True


def maximize_work(problem: OptimizationProblem) -> OptimizationResult:
    """ Scan W on (eps, eta_c - eps), golden-section each local maximum, polish the residual root
    and return the largest one. eta_star = chi_star """
    tol = problem.tolerances
    eps = tol.edge_fraction * problem.eta_c
    chis = np.linspace(eps, problem.eta_c - eps, tol.scan_points)
    curve = _WorkCurve(problem)
    works = np.array([curve.work(chi) for chi in chis])
    if not np.isfinite(works).any():
        raise NoSolutionError(
            f"'{problem.label}' = {problem.g0:g} has no solution for |E_h| on "
            f"(0, {problem.eta_c:g})"
        )
    if np.nanmax(works) <= 0:
        raise NotAnEngineError(f"Work is not positive anywhere under '{problem.label}'")

    candidates = []
    for index in _scan_maxima(works):
        if index == 0 or index == len(chis) - 1:
            # Maximum at the edge of the scan, no bracket to refine in
            candidates.append((float(chis[index]), False))
            continue
        a, b, c = chis[index - 1], chis[index], chis[index + 1]
        guess = _golden(curve, a, b, c, tol)
        candidates.append(_polish(curve, a, c, guess))

    maxima = []
    for chi, polished in candidates:
        eh = curve.eh(chi)
        maxima.append((chi, eh, curve.work(chi, eh), polished))
    maxima = [item for item in maxima if math.isfinite(item[2])]
    if not maxima:
        raise OptimizationError("No local maximum of the work survived refinement")
    chi_star, eh_star, work_star, polished = max(maxima, key=lambda item: item[2])

    residual = curve.residual(chi_star) if 0 < chi_star < problem.eta_c else math.nan
    converged = polished and math.isfinite(residual) and abs(residual) <= tol.residual \
        and 0 < chi_star < problem.eta_c and work_star > 0
    boundary = chi_star > tol.boundary_fraction * problem.eta_c
    if boundary:
        logger.warning(f"Optimum chi*={chi_star:.12g} is within "
                       f"{(1 - tol.boundary_fraction) * 100:g}% of eta_c={problem.eta_c:g}")
    if not converged:
        logger.warning(f"Optimisation of '{problem.label}' at eta_c={problem.eta_c:g} did not "
                       f"converge, residual={residual:.3e}")
    logger.info(f"'{problem.label}' eta_c={problem.eta_c:g}: chi*={chi_star:.12g} "
                f"W*={work_star:.6e} ({len(maxima)} local maxima)")
    return result_from(
        problem,
        chi=chi_star,
        eh=eh_star,
        work=work_star,
        residual=residual,
        iterations=curve.evaluations,
        converged=converged,
        local_maxima=tuple((chi, work) for chi, _, work, _ in sorted(maxima)),
        boundary_warning=boundary,
    )


def optimize_preset(
        name: str,
        params: Optional[Mapping[str, float]] = None,
        *,
        g0: float,
        eta_c: float,
        beta_c: float = 1.0,
        xi: float = 1.0,
        n_levels: int = 2,
        eh_bracket: Tuple[float, float] = DEFAULT_EH_BRACKET,
        tolerances: Tolerances = DEFAULT_TOLERANCES
) -> OptimizationResult:
    problem = OptimizationProblem(
        constraint=preset(name, params),
        g0=g0,
        eta_c=eta_c,
        beta_c=beta_c,
        xi=xi,
        n_levels=n_levels,
        eh_bracket=eh_bracket,
        tolerances=tolerances,
    )
    return maximize_work(problem)
