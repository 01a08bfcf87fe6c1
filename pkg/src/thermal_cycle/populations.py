"""
File:           populations.py
Created on:     12/10/26, 5:20 pm

Thermal populations and the partial swap thermalization map
    p_A = (1 - xi) p_B + xi p_hot,     p_B = (1 - xi) p_A + xi p_cold
whose fixed point fixes the populations after the hot (A) and cold (B) strokes.
"""
from typing import Tuple, Union, Sequence

import numpy as np

from src.spectra import Spectrum
from src.utils.errors import OttoEngineError
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("populations")

PROBABILITY_TOL = 1e-12


class PopulationError(OttoEngineError):
    pass


def _levels(s: Union[Spectrum, Sequence[float], np.ndarray]) -> np.ndarray:
    if isinstance(s, Spectrum):
        return s.array
    return np.asarray(s, dtype=float)


def gibbs_populations(s: Union[Spectrum, Sequence[float]], beta: float) -> np.ndarray:
    """ p_i = exp(-beta E_i) / Z, shifted by the ground level so that exp never overflows """
    if not beta >= 0:
        raise PopulationError(f"Inverse temperature must be >= 0, got {beta}")
    levels = _levels(s)
    with np.errstate(over="raise", invalid="raise"):
        try:
            weights = np.exp(-beta * (levels - levels.min()))
        except FloatingPointError as err:
            raise PopulationError(f"Gibbs weights overflow for beta={beta}") from err
    total = weights.sum()
    populations = weights / total
    if not np.all(np.isfinite(populations)):
        raise PopulationError(f"Non-finite Gibbs populations for beta={beta}")
    return populations


def check_probabilities(p: np.ndarray, name: str) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise PopulationError(f"{name} must be a probability vector with at least 2 entries")
    if np.any(p < 0) or abs(p.sum() - 1.0) > PROBABILITY_TOL * p.size:
        raise PopulationError(f"{name} is not a probability vector: {p.tolist()}")
    return p


def _check_pair(p_hot_th, p_cold_th, xi: float) -> Tuple[np.ndarray, np.ndarray]:
    p_hot_th = check_probabilities(p_hot_th, "p_hot_th")
    p_cold_th = check_probabilities(p_cold_th, "p_cold_th")
    if p_hot_th.size != p_cold_th.size:
        raise PopulationError(
            f"Dimension mismatch between hot ({p_hot_th.size}) and cold ({p_cold_th.size}) "
            f"populations"
        )
    if not 0 < xi <= 1:
        raise PopulationError(f"Swap parameter xi must be in (0, 1], got {xi}")
    return p_hot_th, p_cold_th


def swap_steady_state(p_hot_th, p_cold_th, xi: float) -> Tuple[np.ndarray, np.ndarray]:
    """ Closed-form fixed point of the two-stroke swap map; returns (after hot, after cold) """
    p_hot_th, p_cold_th = _check_pair(p_hot_th, p_cold_th, xi)
    pop_after_hot = (p_hot_th + (1.0 - xi) * p_cold_th) / (2.0 - xi)
    pop_after_cold = (p_cold_th + (1.0 - xi) * p_hot_th) / (2.0 - xi)
    return pop_after_hot, pop_after_cold


def iterate_strokes(
        p_hot_th,
        p_cold_th,
        xi: float,
        tol: float = 1e-15,
        max_cycles: int = 100000
) -> Tuple[np.ndarray, np.ndarray, int]:
    """ Run the thermal strokes from the maximally mixed state until the limit cycle is reached """
    p_hot_th, p_cold_th = _check_pair(p_hot_th, p_cold_th, xi)
    pop_after_cold = np.full(p_hot_th.size, 1.0 / p_hot_th.size)
    for cycle in range(1, max_cycles + 1):
        pop_after_hot = (1.0 - xi) * pop_after_cold + xi * p_hot_th
        updated = (1.0 - xi) * pop_after_hot + xi * p_cold_th
        change = np.max(np.abs(updated - pop_after_cold))
        pop_after_cold = updated
        if change < tol:
            logger.debug(f"Stroke iteration converged after {cycle} cycles")
            pop_after_hot = (1.0 - xi) * pop_after_cold + xi * p_hot_th
            return pop_after_hot, pop_after_cold, cycle
    raise PopulationError(f"Stroke iteration did not converge in {max_cycles} cycles (xi={xi})")
