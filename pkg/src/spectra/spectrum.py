"""
File:           spectrum.py
Created on:     12/10/26, 4:31 pm

Energy-level sets of the working medium. Levels are shifted to zero mean and stored in ascending
order; level i of a hot spectrum is paired with level i of the cold spectrum.
"""
from typing import Iterable, Optional, Sequence, Tuple, Union
from dataclasses import dataclass, field
import math

import numpy as np

from src.utils.errors import OttoEngineError
from src.utils.settings import Tolerances, DEFAULT_TOLERANCES


class SpectrumError(OttoEngineError):
    pass


class CompressionError(OttoEngineError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """ Zero-mean vector of N energy levels with its cached norm squared """
    levels: Tuple[float, ...]
    norm_sq: float
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, compare=False, repr=False)

    def __post_init__(self):
        if len(self.levels) < 2:
            raise SpectrumError(f"Spectrum needs at least 2 levels, got {len(self.levels)}")
        scale = max(abs(level) for level in self.levels)
        mean = math.fsum(self.levels) / len(self.levels)
        if abs(mean) > self.tolerances.zero_mean_rel * scale:
            raise SpectrumError(f"Spectrum levels must have zero mean, mean is {mean}")
        expected = math.fsum(level * level for level in self.levels)
        if abs(self.norm_sq - expected) > self.tolerances.norm_rel * expected:
            raise SpectrumError(
                f"Cached norm_sq {self.norm_sq} does not match sum of squares {expected}"
            )

    def __len__(self):
        return len(self.levels)

    def __str__(self):
        return "[" + ", ".join(f"{level:.6g}" for level in self.levels) + "]"

    @property
    def n_levels(self) -> int:
        return len(self.levels)

    @property
    def norm(self) -> float:
        """ |E|, the Euclidean norm of the zero-mean levels """
        return math.sqrt(self.norm_sq)

    @property
    def variance(self) -> float:
        """ |E|^2 / N """
        return self.norm_sq / self.n_levels

    @property
    def array(self) -> np.ndarray:
        return np.array(self.levels, dtype=float)


@dataclass(frozen=True)
class CompressionDeviation:
    """ chi in E_c = (1 - chi) E_h. The engine regime is 0 <= chi <= eta_c """
    chi: float

    @property
    def ratio(self) -> float:
        return compression_ratio(self.chi)

    def is_engine_regime(self, eta_c: float) -> bool:
        return is_engine_regime(self.chi, eta_c)


def _from_sorted(values: np.ndarray, tolerances: Tolerances) -> Spectrum:
    levels = tuple(float(value) for value in values)
    return Spectrum(
        levels=levels,
        norm_sq=math.fsum(level * level for level in levels),
        tolerances=tolerances
    )


def _centred(values: np.ndarray, zero_mean_rel: float) -> np.ndarray:
    """ Mean subtraction in two passes; the second removes the rounding residual of the first """
    for _ in range(2):
        mean = math.fsum(values) / values.size
        # Already centred input is kept untouched so that make_spectrum is idempotent
        if abs(mean) <= zero_mean_rel * float(np.max(np.abs(values))):
            break
        values = values - mean
    return values


def make_spectrum(
        raw_levels: Iterable[float],
        tolerances: Tolerances = DEFAULT_TOLERANCES
) -> Spectrum:
    """ Shift raw levels to zero mean and return the canonical (sorted) spectrum """
    values = np.asarray(list(raw_levels), dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise SpectrumError(f"Spectrum needs at least 2 levels, got {values.size}")
    if not np.all(np.isfinite(values)):
        raise SpectrumError(f"Spectrum levels must be finite, got {values.tolist()}")
    values = _centred(values, tolerances.zero_mean_rel)
    return _from_sorted(np.sort(values), tolerances)


def parse_levels(text: str, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    """ Parse a comma separated list such as "-1, 0, 1" """
    try:
        raw = [float(item) for item in text.replace(";", ",").split(",") if item.strip()]
    except ValueError as err:
        raise SpectrumError(f"Cannot parse levels '{text}': {err}") from err
    return make_spectrum(raw, tolerances)


def compression_ratio(chi: float) -> float:
    """ C = 1 / (1 - chi) """
    if chi >= 1:
        raise CompressionError(f"Compression deviation must be < 1, got {chi}")
    return 1.0 / (1.0 - chi)


def compress(hot: Spectrum, chi: Union[float, CompressionDeviation]) -> Spectrum:
    """ Uniformly compressed cold spectrum (1 - chi) * hot """
    if isinstance(chi, CompressionDeviation):
        chi = chi.chi
    if not math.isfinite(chi) or chi >= 1:
        raise CompressionError(
            f"Compression deviation must be finite and < 1 (cold spectrum collapses or inverts), "
            f"got {chi}"
        )
    factor = 1.0 - chi
    levels = tuple(factor * level for level in hot.levels)
    return Spectrum(levels=levels, norm_sq=factor * factor * hot.norm_sq, tolerances=hot.tolerances)


def is_engine_regime(chi: float, eta_c: float) -> bool:
    """ Engine condition 0 <= chi <= eta_c """
    return 0.0 <= chi <= eta_c


def _tolerance(levels: Sequence[float], tol: float) -> float:
    return tol * max(1.0, max(abs(level) for level in levels))


def is_symmetric_spectrum(s: Spectrum, tol: Optional[float] = None) -> bool:
    """ True when the levels are mirror symmetric about zero. tol defaults to the spectrum's own
    spectrum_symmetry tolerance """
    tol = s.tolerances.spectrum_symmetry if tol is None else tol
    ordered = np.sort(s.array)
    return bool(np.all(np.abs(ordered + ordered[::-1]) <= _tolerance(s.levels, tol)))


def is_evenly_spaced(s: Spectrum, tol: Optional[float] = None) -> bool:
    """ True when consecutive gaps are equal (evenly spaced zero-mean spectra are symmetric) """
    tol = s.tolerances.spectrum_symmetry if tol is None else tol
    gaps = np.diff(np.sort(s.array))
    return bool(np.all(np.abs(gaps - gaps[0]) <= _tolerance(s.levels, tol)))


def spectrum_flags(s: Spectrum, tol: Optional[float] = None) -> dict:
    return {
        "symmetric": is_symmetric_spectrum(s, tol),
        "evenly_spaced": is_evenly_spaced(s, tol),
    }


def norm_ratio_chi(hot: Spectrum, cold: Spectrum) -> float:
    """ 1 - |E_c| / |E_h|, the compression deviation of parallel spectra """
    if hot.norm_sq == 0:
        return math.nan
    return 1.0 - cold.norm / hot.norm
