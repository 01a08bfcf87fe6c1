"""
File:           __init__.py
Created on:     12/10/26, 5:00 pm
"""
from .engine import EngineSpec, EngineSpecError, CycleResult, swap_factor
from .populations import PopulationError, gibbs_populations, swap_steady_state, iterate_strokes
from .ultra_hot import ultra_hot_work, ultra_hot_work_levels, parallel_work, beta2_correction, \
    beta2_correction_levels, universal_max_work
from .cycle import BathObservables, CYCLE_COLUMNS, exact_cycle, exact_efficiency, \
    bath_observables, cycle_report
