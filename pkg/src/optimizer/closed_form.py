"""
File:           closed_form.py
Created on:     13/10/26, 5:15 pm

Analytic efficiency at maximal work for the constraints that admit one. Used as the reference the
numerical optimiser is tested against.
"""
from typing import Mapping, Optional
import math

from src.optimizer.problem import OptimizationError
from src.utils.enum import PresetName


class UnknownClosedFormError(OptimizationError):
    pass


def _param(params: Mapping[str, float], key: str, name: str) -> float:
    if key not in params:
        raise UnknownClosedFormError(f"Closed form for {name} needs parameter {key!r}")
    return float(params[key])


def closed_form_efficiency(
        name: str,
        eta_c: float,
        params: Optional[Mapping[str, float]] = None
) -> float:
    """
    hot_norm        eta_c / 2
    cold_norm       eta_c / (2 - eta_c)
    product         1 - sqrt(1 - eta_c)  (Curzon-Ahlborn)
    alpha_linear    eta_c / (2 - alpha eta_c)
    sum             alpha_linear with alpha = 1/2
    s_linear        eta_c / (2 - s)
    d_linear        d eta_c / (2 d - eta_c), interior only for d > eta_c
    """
    params = params or {}
    try:
        name = PresetName(name)
    except ValueError:
        raise UnknownClosedFormError(f"No closed form efficiency named {name!r}") from None
    if not 0 <= eta_c < 1:
        raise OptimizationError(f"eta_c must be in [0, 1), got {eta_c}")
    if name == PresetName.HOT_NORM:
        return eta_c / 2.0
    if name == PresetName.COLD_NORM:
        return eta_c / (2.0 - eta_c)
    if name == PresetName.PRODUCT:
        return 1.0 - math.sqrt(1.0 - eta_c)
    if name == PresetName.ALPHA_LINEAR:
        return eta_c / (2.0 - _param(params, "alpha", name.value) * eta_c)
    if name == PresetName.NORM_SUM:
        return eta_c / (2.0 - 0.5 * eta_c)
    if name == PresetName.S_LINEAR:
        return eta_c / (2.0 - _param(params, "s", name.value))
    if name == PresetName.D_LINEAR:
        d = _param(params, "d", name.value)
        if d <= eta_c:
            raise OptimizationError(f"d_linear has no interior optimum for d={d} <= eta_c={eta_c}")
        return d * eta_c / (2.0 * d - eta_c)
    raise UnknownClosedFormError(f"No closed form efficiency for {name.value}")
