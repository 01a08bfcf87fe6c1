"""
File:           engine.py
Created on:     12/10/26, 5:02 pm
"""
from typing import Tuple, Optional
from dataclasses import dataclass, asdict
import math

from src.spectra import Spectrum, compress, norm_ratio_chi
from src.utils.errors import OttoEngineError


class EngineSpecError(OttoEngineError):
    pass


@dataclass(frozen=True)
class EngineSpec:
    """ Hot and cold spectra, inverse bath temperatures and swap parameter of one Otto engine """
    hot: Spectrum
    cold: Spectrum
    beta_h: float
    beta_c: float
    xi: float = 1.0

    def __post_init__(self):
        if self.hot.n_levels != self.cold.n_levels:
            raise EngineSpecError(
                f"Hot and cold spectra must have the same number of levels, got "
                f"{self.hot.n_levels} and {self.cold.n_levels}"
            )
        if not (math.isfinite(self.beta_h) and math.isfinite(self.beta_c)):
            raise EngineSpecError(
                f"Inverse temperatures must be finite, got beta_h={self.beta_h}, "
                f"beta_c={self.beta_c}"
            )
        if not 0 < self.beta_h <= self.beta_c:
            raise EngineSpecError(
                f"Need 0 < beta_h <= beta_c, got beta_h={self.beta_h}, beta_c={self.beta_c}"
            )
        if not 0 < self.xi <= 1:
            raise EngineSpecError(f"Swap parameter xi must be in (0, 1], got {self.xi}")

    @classmethod
    def from_compression(
            cls,
            hot: Spectrum,
            chi: float,
            *,
            beta_h: float,
            beta_c: float,
            xi: float = 1.0
    ) -> "EngineSpec":
        """ Engine with the uniformly compressed cold spectrum (1 - chi) * hot """
        return cls(hot=hot, cold=compress(hot, chi), beta_h=beta_h, beta_c=beta_c, xi=xi)

    @classmethod
    def from_temperatures(
            cls,
            hot: Spectrum,
            cold: Spectrum,
            *,
            t_h: float,
            t_c: float,
            xi: float = 1.0
    ) -> "EngineSpec":
        """ Temperatures in energy units (k_B = 1) """
        if t_h <= 0 or t_c <= 0:
            raise EngineSpecError(f"Temperatures must be positive, got T_h={t_h}, T_c={t_c}")
        return cls(hot=hot, cold=cold, beta_h=1.0 / t_h, beta_c=1.0 / t_c, xi=xi)

    @property
    def n_levels(self) -> int:
        return self.hot.n_levels

    @property
    def eta_c(self) -> float:
        """ Carnot efficiency 1 - beta_h / beta_c """
        return 1.0 - self.beta_h / self.beta_c

    @property
    def chi(self) -> float:
        """ 1 - |E_c| / |E_h|; equals the compression deviation for parallel spectra """
        return norm_ratio_chi(self.hot, self.cold)

    @property
    def swap_factor(self) -> float:
        return swap_factor(self.xi)


@dataclass(frozen=True)
class CycleResult:
    """ Steady-state output of one exact Otto cycle. work = q_hot + q_cold """
    work: float
    q_hot: float
    q_cold: float
    efficiency: float           # nan when q_hot <= 0
    pop_after_hot: Tuple[float, ...]
    pop_after_cold: Tuple[float, ...]

    @property
    def is_engine(self) -> bool:
        return self.q_hot > 0 and self.work > 0

    def to_dict(self) -> dict:
        data = asdict(self)
        data["pop_after_hot"] = list(self.pop_after_hot)
        data["pop_after_cold"] = list(self.pop_after_cold)
        return data


def swap_factor(xi: float) -> float:
    """ xi / (2 - xi), the work prefactor of the partial swap thermalization """
    return xi / (2.0 - xi)


def engine_label(e: EngineSpec, chi: Optional[float] = None) -> str:
    chi = e.chi if chi is None else chi
    return f"N={e.n_levels} chi={chi:.6g} beta_c={e.beta_c:.6g} beta_h={e.beta_h:.6g} xi={e.xi:.6g}"
