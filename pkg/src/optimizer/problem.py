"""
File:           problem.py
Created on:     13/10/26, 3:10 pm
"""
from typing import Tuple, Dict, Optional
from dataclasses import dataclass, field
import math

from src.constraint_dsl import ConstraintExpr
from src.spectra import compression_ratio
from src.utils.errors import OttoEngineError
from src.utils.settings import Tolerances, DEFAULT_TOLERANCES


class OptimizationError(OttoEngineError):
    pass


class NoSolutionError(OptimizationError):
    pass


class AmbiguousConstraintError(OptimizationError):
    pass


class SingularConstraintError(OptimizationError):
    pass


RESULT_COLUMNS = [
    "constraint", "g0", "eta_c", "chi_star", "eta_star", "eh_star", "work_star", "residual",
    "converged",
]

DEFAULT_EH_BRACKET = (0.5, 2.0)


@dataclass(frozen=True)
class OptimizationProblem:
    """ Maximise the ultra-hot work over chi subject to G((1 - chi) r, r) = g0 """
    constraint: ConstraintExpr
    g0: float
    eta_c: float
    beta_c: float = 1.0
    xi: float = 1.0
    n_levels: int = 2
    eh_bracket: Tuple[float, float] = DEFAULT_EH_BRACKET
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        if not 0 < self.eta_c < 1:
            raise OptimizationError(f"eta_c must be in (0, 1), got {self.eta_c}")
        if not math.isfinite(self.g0):
            raise OptimizationError(f"g0 must be finite, got {self.g0}")
        lo, hi = self.eh_bracket
        if not 0 < lo < hi:
            raise OptimizationError(f"Bracket for |E_h| must satisfy 0 < lo < hi, got {lo}, {hi}")
        if self.beta_c <= 0:
            raise OptimizationError(f"beta_c must be positive, got {self.beta_c}")
        if not 0 < self.xi <= 1:
            raise OptimizationError(f"xi must be in (0, 1], got {self.xi}")
        if self.n_levels < 2:
            raise OptimizationError(f"Need at least two levels, got {self.n_levels}")
        # eta_c-dependent constraints see the problem's Carnot efficiency
        if self.constraint.references("eta_c"):
            object.__setattr__(self, "constraint", self.constraint.bind(eta_c=self.eta_c))
        self.constraint.check_bound()

    @property
    def label(self) -> str:
        params = ", ".join(
            f"{key}={value:g}" for key, value in sorted(self.constraint.params.items())
        )
        text = self.constraint.source_text
        return f"{text} [{params}]" if params else text


@dataclass(frozen=True)
class OptimizationResult:
    constraint: str
    g0: float
    eta_c: float
    chi_star: float
    eta_star: float                 # equal to chi_star for parallel spectra
    eh_star: float
    work_star: float
    residual: float
    iterations: int
    converged: bool
    local_maxima: Tuple[Tuple[float, float], ...] = ()      # (chi, work) of every polished maximum
    boundary_warning: bool = False

    @property
    def compression_ratio(self) -> float:
        return compression_ratio(self.chi_star)

    def to_row(self) -> Dict[str, object]:
        return {column: getattr(self, column) for column in RESULT_COLUMNS}

    def to_dict(self) -> Dict[str, object]:
        data = self.to_row()
        data.update(
            iterations=self.iterations,
            boundary_warning=self.boundary_warning,
            compression_ratio=self.compression_ratio,
            local_maxima=[{"chi": chi, "work": work} for chi, work in self.local_maxima],
        )
        return data


def result_from(
        problem: OptimizationProblem,
        chi: float,
        eh: float,
        work: float,
        residual: float,
        iterations: int,
        converged: bool,
        local_maxima: Tuple[Tuple[float, float], ...] = (),
        boundary_warning: Optional[bool] = False
) -> OptimizationResult:
    return OptimizationResult(
        constraint=problem.label,
        g0=problem.g0,
        eta_c=problem.eta_c,
        chi_star=chi,
        eta_star=chi,
        eh_star=eh,
        work_star=work,
        residual=residual,
        iterations=iterations,
        converged=converged,
        local_maxima=local_maxima,
        boundary_warning=bool(boundary_warning),
    )
