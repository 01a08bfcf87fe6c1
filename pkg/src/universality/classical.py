"""
File:           classical.py
Created on:     15/10/26, 11:45 am

Classical finite-time reference values: the low-dissipation window, its second order series and
Curzon-Ahlborn.
"""
from dataclasses import dataclass, asdict
import math

from src.utils.errors import OttoEngineError


class ComparatorError(OttoEngineError):
    pass


@dataclass(frozen=True)
class ClassicalComparison:
    eta_c: float
    sigma_c: float
    sigma_h: float
    eta_ld_low: float           # eta_c / 2
    eta_ld_high: float          # eta_c / (2 - eta_c)
    eta_ca: float
    ld_quadratic: float         # 1 / (4 (1 + sqrt(sigma_c / sigma_h)))
    ld_series: float

    def to_dict(self) -> dict:
        return asdict(self)


def curzon_ahlborn(temperature_ratio: float) -> float:
    """ 1 - sqrt(T_c / T_h) """
    if not 0 <= temperature_ratio <= 1:
        raise ComparatorError(f"T_c/T_h must be in [0, 1], got {temperature_ratio}")
    return 1.0 - math.sqrt(temperature_ratio)


def ld_quadratic_coefficient(sigma_c: float, sigma_h: float) -> float:
    if sigma_c < 0 or sigma_h < 0:
        raise ComparatorError(f"Relaxation scales must be non-negative, got {sigma_c}, {sigma_h}")
    if sigma_c == 0 and sigma_h == 0:
        raise ComparatorError("sigma_c and sigma_h cannot both be zero")
    if sigma_h == 0:
        return 0.0
    return 1.0 / (4.0 * (1.0 + math.sqrt(sigma_c / sigma_h)))


def eta_low_dissipation_series(eta_c: float, sigma_c: float, sigma_h: float) -> float:
    return 0.5 * eta_c + ld_quadratic_coefficient(sigma_c, sigma_h) * eta_c ** 2


def classical_comparators(
        eta_c: float,
        sigma_c: float = 1.0,
        sigma_h: float = 1.0
) -> ClassicalComparison:
    if not 0 <= eta_c < 1:
        raise ComparatorError(f"eta_c must be in [0, 1), got {eta_c}")
    quadratic = ld_quadratic_coefficient(sigma_c, sigma_h)
    return ClassicalComparison(
        eta_c=eta_c,
        sigma_c=sigma_c,
        sigma_h=sigma_h,
        eta_ld_low=eta_c / 2.0,
        eta_ld_high=eta_c / (2.0 - eta_c),
        eta_ca=curzon_ahlborn(1.0 - eta_c),
        ld_quadratic=quadratic,
        ld_series=0.5 * eta_c + quadratic * eta_c ** 2,
    )
