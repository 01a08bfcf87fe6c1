"""
File:           runner.py
Created on:     15/10/26, 5:05 pm

Command dispatch. Every command produces a list of flat rows plus its fixed CSV column set.
"""
from typing import Any, Callable, Dict, List, Optional, Tuple, TextIO
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
import math
import sys

from src.constraint_dsl import ConstraintExpr, parse_constraint, preset
from src.optimizer import OptimizationProblem, RESULT_COLUMNS, maximize_work
from src.spectra import make_spectrum, compress, is_symmetric_spectrum
from src.thermal_cycle import EngineSpec, CYCLE_COLUMNS, cycle_report
from src.universality import expansion_coeffs, fit_expansion, a_bounds_check, \
    order_changing_check, reference_eh, classical_comparators
from src.cli.run_config import RunConfig, ConfigError
from src.cli.writers import write_rows, write_metadata
from src.utils.enum import Command
from src.utils.errors import OttoEngineError, NotAnEngineError
from src.utils.logger import LogFacade


logger: LogFacade = LogFacade.get_logger("runner")

EXPANSION_COLUMNS = [
    "constraint", "a_analytic", "b_analytic", "a_fit", "b_fit", "symmetric", "order_changing",
    "classification",
]
COMPARE_COLUMNS = [
    "eta_c", "eta_star", "eta_ld_low", "eta_ld_high", "eta_ca", "ld_series", "exceeds_ld_high",
]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_AN_ENGINE = 2

Rows = Tuple[List[Dict[str, Any]], List[str]]


def build_engine(config: RunConfig) -> EngineSpec:
    hot = make_spectrum(config.levels, config.tolerances)
    if config.cold_levels is not None:
        cold = make_spectrum(config.cold_levels, config.tolerances)
    else:
        cold = compress(hot, config.chi)
    return EngineSpec(hot=hot, cold=cold, beta_h=config.beta_h, beta_c=config.beta_c, xi=config.xi)


def build_constraint(config: RunConfig) -> ConstraintExpr:
    if config.preset is not None:
        return preset(config.preset, config.params)
    return parse_constraint(config.constraint, params=config.params)


def build_problem(config: RunConfig, eta_c: Optional[float] = None) -> OptimizationProblem:
    return OptimizationProblem(
        constraint=build_constraint(config),
        g0=config.g0,
        eta_c=config.carnot if eta_c is None else eta_c,
        beta_c=config.beta_c or 1.0,
        xi=config.xi,
        n_levels=config.n_levels or 2,
        eh_bracket=config.eh_bracket,
        tolerances=config.tolerances,
    )


def simulate_row(config: RunConfig) -> Dict[str, Any]:
    engine = build_engine(config)
    row = cycle_report(engine)
    # JSON output only, CSV keeps CYCLE_COLUMNS
    row["symmetric_spectrum"] = is_symmetric_spectrum(engine.hot)
    return row


def optimize_row(config: RunConfig, eta_c: Optional[float] = None) -> Dict[str, Any]:
    return maximize_work(build_problem(config, eta_c)).to_dict()


def run_simulate(config: RunConfig) -> Rows:
    row = simulate_row(config)
    return [row], CYCLE_COLUMNS


def run_optimize(config: RunConfig) -> Rows:
    return [optimize_row(config)], RESULT_COLUMNS


def run_expand(config: RunConfig) -> Rows:
    constraint = build_constraint(config)
    check = order_changing_check(constraint, config.carnot)
    row: Dict[str, Any] = {
        "constraint": constraint.source_text,
        "order_changing": check.order_changing,
        "report": check.report,
        "boundary_case": check.boundary_case,
    }
    if check.order_changing:
        # Coefficients do not exist; the numerical optimiser is the only route
        row.update(a_analytic=math.nan, b_analytic=math.nan, a_fit=math.nan, b_fit=math.nan,
                   symmetric=False, classification="", eta_closed_form=check.eta_closed_form)
        return [row], EXPANSION_COLUMNS
    reference = reference_eh(constraint, config.g0, config.eh_bracket, config.tolerances)
    coeffs = expansion_coeffs(constraint, reference, config.tolerances)
    bounds = a_bounds_check(constraint, reference, config.tolerances)
    a_fit, b_fit = fit_expansion(
        constraint, config.g0, eh_bracket=config.eh_bracket, tolerances=config.tolerances
    )
    row.update(
        a_analytic=coeffs.a,
        b_analytic=coeffs.b,
        a_fit=a_fit,
        b_fit=b_fit,
        symmetric=coeffs.symmetric,
        classification=bounds.classification.value,
        reference_eh=reference,
        cap_a=coeffs.cap_a,
        cap_b=coeffs.cap_b,
    )
    return [row], EXPANSION_COLUMNS


def _axis_config(config: RunConfig, value: float) -> Tuple[RunConfig, Dict[str, Any]]:
    """ Copy of config with the swept variable set to value, plus any extra keyword for the row """
    variable = config.sweep.variable
    if variable == "beta":
        ratio = config.beta_h / config.beta_c
        return replace(config, beta_c=value, beta_h=value * ratio), {}
    if variable in ("chi", "xi", "g0"):
        return replace(config, **{variable: value}), {}
    if variable == "eta_c":
        return config, {"eta_c": value}
    params = dict(config.params)
    params[variable] = value
    return replace(config, params=params), {}


def _sweep_point(config: RunConfig, value: float) -> Dict[str, Any]:
    point, extra = _axis_config(config, value)
    logger.info(f"Sweep {config.sweep.variable}={value:.12g}")
    if config.sweep.is_simulation:
        row = simulate_row(point)
    else:
        row = optimize_row(point, **extra)
    return dict({config.sweep.variable: value}, **row)


def _map_points(config: RunConfig, func: Callable[[float], Dict[str, Any]]) -> List[Dict[str, Any]]:
    values = [float(value) for value in config.sweep.values()]
    if config.workers == 1:
        return [func(value) for value in values]
    # map keeps the axis order regardless of completion order
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        return list(executor.map(func, values))


def run_sweep(config: RunConfig) -> Rows:
    columns = CYCLE_COLUMNS if config.sweep.is_simulation else RESULT_COLUMNS
    if config.sweep.variable not in columns:
        columns = [config.sweep.variable] + list(columns)
    rows = _map_points(config, lambda value: _sweep_point(config, value))
    return rows, columns


def _compare_point(config: RunConfig, eta_c: float) -> Dict[str, Any]:
    result = maximize_work(build_problem(config, eta_c))
    classical = classical_comparators(eta_c, config.sigma_c, config.sigma_h)
    return {
        "eta_c": eta_c,
        "eta_star": result.eta_star,
        "eta_ld_low": classical.eta_ld_low,
        "eta_ld_high": classical.eta_ld_high,
        "eta_ca": classical.eta_ca,
        "ld_series": classical.ld_series,
        "exceeds_ld_high": result.eta_star > classical.eta_ld_high,
        "converged": result.converged,
    }


def run_compare(config: RunConfig) -> Rows:
    if config.sweep is None:
        return [_compare_point(config, config.carnot)], COMPARE_COLUMNS
    return _map_points(config, lambda eta_c: _compare_point(config, eta_c)), COMPARE_COLUMNS


COMMANDS: Dict[Command, Callable[[RunConfig], Rows]] = {
    Command.SIMULATE: run_simulate,
    Command.OPTIMIZE: run_optimize,
    Command.EXPAND: run_expand,
    Command.SWEEP: run_sweep,
    Command.COMPARE: run_compare,
}


def report_error(stage: str, err: Exception, stream: Optional[TextIO] = None) -> None:
    """ Exactly one diagnostic line """
    stream = stream or sys.stderr
    message = " ".join(str(err).split()) or err.__class__.__name__
    stream.write(f"error [{stage}]: {message}\n")


def run(
        config: RunConfig,
        stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None
) -> int:
    """ Execute the configured command, write its rows and return the process exit code """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stage = config.command.value
    logger.info(f"Running {stage}")
    try:
        rows, columns = COMMANDS[config.command](config)
        write_rows(rows, columns, config.output_format, config.out, stream=stdout)
        if config.out is not None:
            write_metadata(config.out, stage, config.to_dict(), rows)
    except NotAnEngineError as err:
        logger.info(f"{err.__class__.__name__}: {err}")
        report_error(stage, err, stderr)
        return EXIT_NOT_AN_ENGINE
    except ConfigError as err:
        logger.info(f"{err.__class__.__name__}: {err}")
        report_error("config", err, stderr)
        return EXIT_ERROR
    except (OttoEngineError, OSError) as err:
        logger.info(f"{err.__class__.__name__}: {err}")
        report_error(stage, err, stderr)
        return EXIT_ERROR
    if config.command == Command.SIMULATE and not _is_engine_row(rows[0]):
        report_error(stage, NotAnEngineError(
            f"work_exact={rows[0]['work_exact']:.6e} q_hot={rows[0]['q_hot']:.6e}, not an engine"
        ), stderr)
        return EXIT_NOT_AN_ENGINE
    return EXIT_OK


def _is_engine_row(row: Dict[str, Any]) -> bool:
    return row["work_exact"] > 0 and row["q_hot"] > 0
