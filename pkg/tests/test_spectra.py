"""
File:           test_spectra.py
Created on:     17/10/26, 9:20 am
"""
import numpy as np
import pytest

from src.spectra import Spectrum, SpectrumError, CompressionError, CompressionDeviation, \
    make_spectrum, compress, is_engine_regime, is_symmetric_spectrum, is_evenly_spaced, \
    spectrum_flags, compression_ratio, norm_ratio_chi, parse_levels
from src.utils.settings import Tolerances


class TestMakeSpectrum:

    @pytest.mark.parametrize("raw,levels,norm_sq", [
        ([1, 3], [-1.0, 1.0], 2.0),
        ([0, 0, 3], [-1.0, -1.0, 2.0], 6.0),
        ([5, 5], [0.0, 0.0], 0.0),
        ([3, 0, 0], [-1.0, -1.0, 2.0], 6.0),
    ])
    def test_mean_subtraction(self, raw, levels, norm_sq):
        spectrum = make_spectrum(raw)
        assert spectrum.levels == pytest.approx(levels, abs=1e-15)
        assert spectrum.norm_sq == pytest.approx(norm_sq, abs=1e-15)
        assert spectrum.n_levels == len(raw)

    def test_shift_invariance(self, rng):
        for _ in range(50):
            raw = rng.uniform(-1.0, 1.0, size=rng.integers(2, 7))
            shift = rng.uniform(-10.0, 10.0)
            expected = make_spectrum(raw)
            shifted = make_spectrum(raw + shift)
            assert np.max(np.abs(shifted.array - expected.array)) <= 1e-12

    @pytest.mark.parametrize("shift", [1e3, 1e6, -1e8])
    def test_shift_invariance_large_offset(self, rng, shift):
        bound = 8.0 * np.finfo(float).eps * abs(shift)
        for _ in range(20):
            raw = rng.uniform(-1.0, 1.0, size=rng.integers(2, 7))
            shifted = make_spectrum(raw + shift)
            assert np.max(np.abs(shifted.array - make_spectrum(raw).array)) <= bound

    def test_large_common_offset(self):
        assert make_spectrum([1e6, 1e6 + 1e-3]).levels == pytest.approx([-5e-4, 5e-4], abs=1e-9)
        for base in ([-1.0, 0.0, 1.5], [0.1, 0.2, 0.7]):
            shifted = make_spectrum(np.add(base, 1e5))
            assert shifted.levels == pytest.approx(make_spectrum(base).levels, abs=1e-9)

    def test_idempotent(self, asymmetric_three_level):
        assert make_spectrum(asymmetric_three_level.levels) == asymmetric_three_level

    def test_variance_and_norm(self, asymmetric_three_level):
        assert asymmetric_three_level.norm == pytest.approx(np.sqrt(6.0))
        assert asymmetric_three_level.variance == pytest.approx(2.0)

    @pytest.mark.parametrize("raw", [[], [1.0], [1.0, np.nan], [np.inf, 0.0]])
    def test_rejects_bad_input(self, raw):
        with pytest.raises(SpectrumError):
            make_spectrum(raw)

    def test_constructor_enforces_zero_mean(self):
        with pytest.raises(SpectrumError):
            Spectrum(levels=(1.0, 1.0), norm_sq=2.0)

    def test_constructor_enforces_cached_norm(self):
        with pytest.raises(SpectrumError):
            Spectrum(levels=(-1.0, 1.0), norm_sq=3.0)

    def test_parse_levels(self):
        assert parse_levels("-1, 0, 1").levels == (-1.0, 0.0, 1.0)
        assert parse_levels("0; 0; 3").levels == pytest.approx((-1.0, -1.0, 2.0))
        with pytest.raises(SpectrumError):
            parse_levels("1, two")


class TestCompress:

    def test_no_compression(self, two_level):
        assert compress(two_level, 0.0).levels == (-1.0, 1.0)

    def test_scalar_scaling(self, two_level):
        assert compress(two_level, 0.25).levels == pytest.approx((-0.75, 0.75))
        three = compress(make_spectrum([-2, 0, 2]), CompressionDeviation(0.5))
        assert three.levels == pytest.approx((-1.0, 0.0, 1.0))
        assert three.norm_sq == pytest.approx(2.0)

    def test_linearity(self, asymmetric_three_level):
        cold = compress(asymmetric_three_level, 0.3)
        ratio = cold.array / asymmetric_three_level.array
        assert ratio == pytest.approx(np.full(3, 0.7), rel=1e-15)
        assert norm_ratio_chi(asymmetric_three_level, cold) == pytest.approx(0.3, abs=1e-15)

    @pytest.mark.parametrize("chi", [1.0, 1.5, np.nan])
    def test_rejects_collapse(self, two_level, chi):
        with pytest.raises(CompressionError):
            compress(two_level, chi)

    def test_negative_chi_expands(self, two_level):
        assert compress(two_level, -0.5).levels == pytest.approx((-1.5, 1.5))

    def test_compression_ratio(self):
        assert compression_ratio(0.5) == pytest.approx(2.0)
        assert CompressionDeviation(0.2).ratio == pytest.approx(1.25)
        with pytest.raises(CompressionError):
            compression_ratio(1.0)

    def test_norm_ratio_of_degenerate_hot(self):
        flat = make_spectrum([5, 5])
        assert np.isnan(norm_ratio_chi(flat, flat))


class TestPredicates:

    @pytest.mark.parametrize("chi,eta_c,expected", [
        (0.2, 0.5, True),
        (0.6, 0.5, False),
        (0.0, 0.9, True),
        (0.0, 0.0, True),
        (-0.1, 0.5, False),
    ])
    def test_engine_regime(self, chi, eta_c, expected):
        assert is_engine_regime(chi, eta_c) is expected
        assert CompressionDeviation(chi).is_engine_regime(eta_c) is expected

    @pytest.mark.parametrize("raw,expected", [
        ([-1, 1], True),
        ([-1, 0, 1], True),
        ([-1.5, 0.5, 1.0], False),
        ([-1, -1, 2], False),
        ([-3, -1, 1, 3], True),
    ])
    def test_symmetric_spectrum(self, raw, expected):
        assert is_symmetric_spectrum(make_spectrum(raw)) is expected

    def test_evenly_spaced(self):
        assert is_evenly_spaced(make_spectrum([-1, 0, 1]))
        assert is_evenly_spaced(make_spectrum([0, 1, 2, 3]))
        assert not is_evenly_spaced(make_spectrum([-1, -1, 2]))

    def test_flags(self, symmetric_three_level):
        assert spectrum_flags(symmetric_three_level) == {"symmetric": True, "evenly_spaced": True}


class TestTolerances:

    def test_zero_mean_override(self):
        loose = Tolerances(zero_mean_rel=1e-6)
        levels = (-1.0, 1.0 + 1e-9)
        assert make_spectrum(levels, loose).levels == levels
        assert make_spectrum(levels).levels != levels
        Spectrum(levels=levels, norm_sq=1.0 + levels[1] ** 2, tolerances=loose)
        with pytest.raises(SpectrumError):
            Spectrum(levels=levels, norm_sq=1.0 + levels[1] ** 2)

    def test_compress_keeps_tolerances(self):
        loose = Tolerances(zero_mean_rel=1e-6)
        assert compress(make_spectrum([-1, 1], loose), 0.3).tolerances is loose

    def test_symmetry_override(self):
        loose = Tolerances(spectrum_symmetry=1e-3)
        assert not is_symmetric_spectrum(make_spectrum([-1.0, 0.0, 1.000001]))
        assert is_symmetric_spectrum(make_spectrum([-1.0, 0.0, 1.000001], loose))
        assert is_symmetric_spectrum(parse_levels("-1, 0, 1.000001", loose))
