"""
File:           settings.py
Created on:     12/10/26, 4:15 pm

Numeric tolerances shared by every module. Override through config keys or CLI flags prefixed
with ``tol_`` (e.g. ``tol_root_rel = 1e-13``).
"""
from typing import Mapping, Any
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    zero_mean_rel: float = 1e-12        # |mean| <= zero_mean_rel * max|level|
    norm_rel: float = 1e-12
    spectrum_symmetry: float = 1e-12
    root_rel: float = 1e-12             # |G - g0| <= root_rel * (1 + |g0|)
    residual: float = 1e-9
    symmetry_rel: float = 1e-10
    symmetry_samples: int = 64
    scan_points: int = 128
    root_scan_points: int = 256
    bracket_factor: float = 4.0
    bracket_decades: float = 40.0
    boundary_fraction: float = 0.999
    golden_tol: float = 1e-10
    edge_fraction: float = 1e-9         # scan interval (eps, eta_c - eps), eps = this * eta_c

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "Tolerances":
        """ Build from a mapping, picking keys named tol_<field> and ignoring everything else """
        overrides = dict()
        for field_ in fields(cls):
            key = f"tol_{field_.name}"
            if key in values and values[key] is not None:
                overrides[field_.name] = type(field_.default)(values[key])
        return replace(cls(), **overrides)

    def as_dict(self) -> dict:
        return {field_.name: getattr(self, field_.name) for field_ in fields(self)}


DEFAULT_TOLERANCES = Tolerances()
