"""
File:           ultra_hot.py
Created on:     12/10/26, 5:41 pm

Leading-order (in beta) work of the N-level swap engine and its next-order correction.
The *_levels variants take level arrays as given (any pairing); the EngineSpec variants use the
ascending pairing of the stored spectra.
"""
from typing import Sequence

import numpy as np

from src.thermal_cycle.engine import EngineSpec, EngineSpecError, swap_factor


def _pair(hot_levels: Sequence[float], cold_levels: Sequence[float]):
    hot = np.asarray(hot_levels, dtype=float)
    cold = np.asarray(cold_levels, dtype=float)
    if hot.shape != cold.shape:
        raise EngineSpecError(
            f"Dimension mismatch between hot ({hot.size}) and cold ({cold.size}) levels"
        )
    return hot, cold


def ultra_hot_work_levels(
        hot_levels: Sequence[float],
        cold_levels: Sequence[float],
        beta_c: float,
        beta_h: float,
        xi: float = 1.0
) -> float:
    """ (xi/(2-xi)) (1/N) [(b_c + b_h) E_c.E_h - b_c |E_c|^2 - b_h |E_h|^2] """
    hot, cold = _pair(hot_levels, cold_levels)
    bracket = (beta_c + beta_h) * np.dot(cold, hot) - beta_c * np.dot(cold, cold) \
        - beta_h * np.dot(hot, hot)
    return float(swap_factor(xi) * bracket / hot.size)


def ultra_hot_work(e: EngineSpec) -> float:
    """ Leading order work; negative values mean the device is not an engine """
    return ultra_hot_work_levels(e.hot.array, e.cold.array, e.beta_c, e.beta_h, e.xi)


def parallel_work(
        chi: float,
        norm_sq_h: float,
        beta_c: float,
        eta_c: float,
        xi: float,
        n_levels: int
) -> float:
    """ W_chi = (xi/(2-xi)) beta_c chi (eta_c - chi) |E_h|^2 / N for E_c = (1 - chi) E_h """
    return swap_factor(xi) * beta_c * chi * (eta_c - chi) * norm_sq_h / n_levels


def universal_max_work(
        eta_c: float,
        norm_sq_h: float,
        beta_c: float,
        xi: float,
        n_levels: int
) -> float:
    """ Maximum of W_chi at fixed |E_h| (chi = eta_c / 2) """
    return parallel_work(eta_c / 2.0, norm_sq_h, beta_c, eta_c, xi, n_levels)


def beta2_correction_levels(
        hot_levels: Sequence[float],
        cold_levels: Sequence[float],
        beta_c: float,
        beta_h: float,
        xi: float = 1.0
) -> float:
    """ Next order in beta. Vanishes for spectra symmetric about zero and for two levels """
    hot, cold = _pair(hot_levels, cold_levels)
    terms = beta_c ** 2 * (cold ** 3 - cold ** 2 * hot) + beta_h ** 2 * (hot ** 3 - hot ** 2 * cold)
    return float(swap_factor(xi) * 0.5 * terms.sum() / hot.size)


def beta2_correction(e: EngineSpec) -> float:
    return beta2_correction_levels(e.hot.array, e.cold.array, e.beta_c, e.beta_h, e.xi)
