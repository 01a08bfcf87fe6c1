"""
File:           enum.py
Created on:     12/10/26, 4:08 pm
"""
from enum import Enum


class Command(str, Enum):
    SIMULATE = "simulate"
    OPTIMIZE = "optimize"
    EXPAND = "expand"
    SWEEP = "sweep"
    COMPARE = "compare"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class SweepScale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class SymmetryClass(str, Enum):
    SYMMETRIC = "symmetric"         # a = 1/8
    SAME_SIGN = "same_sign"         # 0 <= a <= 1/4
    OPPOSITE_SIGN = "opposite_sign"     # a may exceed 1/4


class PresetName(str, Enum):
    HOT_NORM = "hot_norm"
    COLD_NORM = "cold_norm"
    PRODUCT = "product"
    ALPHA_LINEAR = "alpha_linear"
    D_LINEAR = "d_linear"
    S_LINEAR = "s_linear"
    INVERSE_SUM = "inverse_sum"
    NORM_SUM = "sum"
