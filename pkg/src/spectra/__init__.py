"""
File:           __init__.py
Created on:     12/10/26, 4:30 pm
"""
from .spectrum import Spectrum, SpectrumError, CompressionError, CompressionDeviation, \
    make_spectrum, compress, is_engine_regime, is_symmetric_spectrum, is_evenly_spaced, \
    spectrum_flags, compression_ratio, norm_ratio_chi, parse_levels
