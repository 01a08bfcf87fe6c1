"""
File:           cycle.py
Created on:     12/10/26, 6:04 pm

Exact finite temperature Otto cycle. Used as the ground truth the ultra-hot formulas are checked
against.
"""
from typing import Dict
from dataclasses import dataclass, asdict
import math

import numpy as np

from src.spectra import Spectrum
from src.thermal_cycle.engine import EngineSpec, CycleResult, engine_label
from src.thermal_cycle.populations import gibbs_populations, swap_steady_state
from src.thermal_cycle.ultra_hot import ultra_hot_work, beta2_correction
from src.utils.errors import NotAnEngineError
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("thermal_cycle")

CYCLE_COLUMNS = [
    "chi", "beta_c", "beta_h", "xi", "N", "work_exact", "work_ultra", "work_corrected",
    "q_hot", "q_cold", "eta_exact",
]


@dataclass(frozen=True)
class BathObservables:
    """ Gibbs state observables of one bath, exact next to the ultra-hot formulas """
    internal_energy: float
    purity: float
    heat_capacity: float
    internal_energy_ultra: float        # (1/N) beta |E|^2 magnitude; the exact trace is negative
    purity_ultra: float
    heat_capacity_ultra: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def exact_cycle(e: EngineSpec) -> CycleResult:
    """ Steady state cycle with Gibbs targets and the partial swap map """
    p_hot_th = gibbs_populations(e.hot, e.beta_h)
    p_cold_th = gibbs_populations(e.cold, e.beta_c)
    pop_after_hot, pop_after_cold = swap_steady_state(p_hot_th, p_cold_th, e.xi)
    # p_A - p_B = (xi / (2 - xi)) (p_hot_th - p_cold_th) taken directly, not by subtraction
    delta = e.swap_factor * (p_hot_th - p_cold_th)
    q_hot = float(np.dot(e.hot.array, delta))
    q_cold = float(-np.dot(e.cold.array, delta))
    work = q_hot + q_cold
    efficiency = work / q_hot if q_hot > 0 else math.nan
    logger.debug(f"Exact cycle {engine_label(e)}: W={work:.6e} Qh={q_hot:.6e} Qc={q_cold:.6e}")
    return CycleResult(
        work=work,
        q_hot=q_hot,
        q_cold=q_cold,
        efficiency=efficiency,
        pop_after_hot=tuple(float(p) for p in pop_after_hot),
        pop_after_cold=tuple(float(p) for p in pop_after_cold),
    )


def exact_efficiency(e: EngineSpec) -> float:
    """ work / q_hot of the exact cycle. Equals chi exactly for uniformly compressed spectra """
    result = exact_cycle(e)
    if result.q_hot <= 0 or result.work <= 0:
        raise NotAnEngineError(
            f"Not an engine ({engine_label(e)}): q_hot={result.q_hot:.6e}, work={result.work:.6e}"
        )
    return result.efficiency


def bath_observables(s: Spectrum, beta: float) -> BathObservables:
    """ Internal energy, purity and heat capacity of the Gibbs state at inverse temperature beta """
    p = gibbs_populations(s, beta)
    levels = s.array
    mean_energy = float(np.dot(p, levels))
    mean_energy_sq = float(np.dot(p, levels ** 2))
    n = s.n_levels
    return BathObservables(
        internal_energy=mean_energy,
        purity=float(np.dot(p, p)),
        heat_capacity=beta ** 2 * (mean_energy_sq - mean_energy ** 2),
        internal_energy_ultra=beta * s.norm_sq / n,
        purity_ultra=1.0 / n + beta ** 2 * s.norm_sq / n ** 2,
        heat_capacity_ultra=beta ** 2 * s.norm_sq / n,
    )


def cycle_report(e: EngineSpec) -> Dict[str, float]:
    """ One flat row: exact, ultra-hot and beta^2-corrected work of the engine """
    result = exact_cycle(e)
    work_ultra = ultra_hot_work(e)
    return {
        "chi": e.chi,
        "beta_c": e.beta_c,
        "beta_h": e.beta_h,
        "xi": e.xi,
        "N": e.n_levels,
        "work_exact": result.work,
        "work_ultra": work_ultra,
        "work_corrected": work_ultra + beta2_correction(e),
        "q_hot": result.q_hot,
        "q_cold": result.q_cold,
        "eta_exact": result.efficiency if result.is_engine else math.nan,
    }
