"""
File:           test_thermal_cycle.py
Created on:     17/10/26, 10:05 am
"""
import math

import numpy as np
import pytest

from src.spectra import make_spectrum, compress
from src.thermal_cycle import EngineSpec, EngineSpecError, PopulationError, gibbs_populations, \
    swap_steady_state, iterate_strokes, exact_cycle, exact_efficiency, ultra_hot_work, \
    ultra_hot_work_levels, parallel_work, universal_max_work, beta2_correction, \
    beta2_correction_levels, bath_observables, cycle_report, swap_factor, CYCLE_COLUMNS
from src.utils.errors import NotAnEngineError


def engine(hot, chi, beta_c, beta_h, xi=1.0):
    return EngineSpec.from_compression(hot, chi, beta_h=beta_h, beta_c=beta_c, xi=xi)


class TestGibbsPopulations:

    def test_infinite_temperature(self, two_level):
        assert gibbs_populations(two_level, 0.0) == pytest.approx([0.5, 0.5])

    def test_ground_state_limit(self, two_level):
        p = gibbs_populations(two_level, 500.0)
        assert p[0] == pytest.approx(1.0)
        assert p[1] == pytest.approx(0.0, abs=1e-300)

    def test_direct_boltzmann_weights(self, symmetric_three_level):
        weights = np.exp([0.1, 0.0, -0.1])
        expected = weights / weights.sum()
        assert gibbs_populations(symmetric_three_level, 0.1) == pytest.approx(expected, rel=1e-14)

    def test_plain_level_arrays(self):
        assert gibbs_populations([-2.0, 2.0], 0.0) == pytest.approx([0.5, 0.5])

    @pytest.mark.parametrize("beta", [-0.1, math.nan])
    def test_rejects_bad_beta(self, two_level, beta):
        with pytest.raises(PopulationError):
            gibbs_populations(two_level, beta)


class TestSwapMap:

    def test_full_thermalization(self):
        p_hot, p_cold = np.array([0.6, 0.4]), np.array([0.8, 0.2])
        after_hot, after_cold = swap_steady_state(p_hot, p_cold, 1.0)
        assert after_hot == pytest.approx(p_hot)
        assert after_cold == pytest.approx(p_cold)

    def test_equal_baths(self):
        p = np.array([0.5, 0.3, 0.2])
        after_hot, after_cold = swap_steady_state(p, p, 0.4)
        assert after_hot == pytest.approx(p)
        assert after_cold == pytest.approx(p)

    def test_half_swap(self):
        p_hot, p_cold = np.array([0.6, 0.4]), np.array([0.8, 0.2])
        after_hot, after_cold = swap_steady_state(p_hot, p_cold, 0.5)
        assert after_hot - after_cold == pytest.approx(np.array([-0.2, 0.2]) / 3.0, abs=1e-15)

    @pytest.mark.parametrize("xi", [0.1, 0.5, 0.9, 1.0])
    def test_closed_form_matches_stroke_iteration(self, xi):
        p_hot, p_cold = np.array([0.5, 0.3, 0.2]), np.array([0.7, 0.2, 0.1])
        after_hot, after_cold = swap_steady_state(p_hot, p_cold, xi)
        iter_hot, iter_cold, cycles = iterate_strokes(p_hot, p_cold, xi)
        assert cycles >= 1
        assert iter_hot == pytest.approx(after_hot, abs=1e-14)
        assert iter_cold == pytest.approx(after_cold, abs=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(PopulationError):
            swap_steady_state([0.5, 0.5], [0.2, 0.3, 0.5], 1.0)

    def test_not_a_probability_vector(self):
        with pytest.raises(PopulationError):
            swap_steady_state([0.7, 0.7], [0.5, 0.5], 1.0)

    @pytest.mark.parametrize("xi", [0.0, 1.2])
    def test_bad_swap_parameter(self, xi):
        with pytest.raises(PopulationError):
            swap_steady_state([0.5, 0.5], [0.5, 0.5], xi)


class TestEngineSpec:

    def test_dimension_mismatch(self, two_level, symmetric_three_level):
        with pytest.raises(EngineSpecError):
            EngineSpec(hot=symmetric_three_level, cold=two_level, beta_h=0.1, beta_c=0.2)

    @pytest.mark.parametrize("beta_h,beta_c,xi", [(0.2, 0.1, 1.0), (0.0, 0.1, 1.0),
                                                  (0.1, 0.2, 0.0), (0.1, math.inf, 1.0)])
    def test_rejects_bad_parameters(self, two_level, beta_h, beta_c, xi):
        with pytest.raises(EngineSpecError):
            EngineSpec(hot=two_level, cold=two_level, beta_h=beta_h, beta_c=beta_c, xi=xi)

    def test_from_temperatures(self, two_level):
        e = EngineSpec.from_temperatures(two_level, compress(two_level, 0.2), t_h=200.0, t_c=100.0)
        assert e.beta_c == pytest.approx(0.01)
        assert e.eta_c == pytest.approx(0.5)
        assert e.chi == pytest.approx(0.2)

    @pytest.mark.parametrize("xi,expected", [(1.0, 1.0), (0.5, 1.0 / 3.0), (0.1, 0.1 / 1.9)])
    def test_swap_factor(self, xi, expected):
        assert swap_factor(xi) == pytest.approx(expected)


class TestExactCycle:

    def test_no_compression_gives_zero_work(self, asymmetric_three_level):
        result = exact_cycle(engine(asymmetric_three_level, 0.0, 0.3, 0.1))
        assert result.work == 0.0
        assert not result.is_engine

    def test_equal_baths(self, asymmetric_three_level):
        # Without a temperature gradient a compressed cycle can only consume work
        compressed = exact_cycle(engine(asymmetric_three_level, 0.2, 0.1, 0.1))
        assert compressed.work <= 0.0
        same = exact_cycle(engine(asymmetric_three_level, 0.0, 0.1, 0.1))
        assert same.work == 0.0

    def test_two_level_matches_ultra_hot(self, two_level):
        e = engine(two_level, 0.2, 0.02, 0.01)
        assert exact_cycle(e).work == pytest.approx(ultra_hot_work(e), abs=1e-6)
        assert ultra_hot_work(e) == pytest.approx(0.0012, rel=1e-12)

    def test_first_law_and_populations(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 6))
            hot = make_spectrum(rng.normal(size=n))
            cold = make_spectrum(rng.normal(size=n))
            beta_h = float(rng.uniform(0.01, 2.0))
            beta_c = beta_h * float(rng.uniform(1.0, 5.0))
            result = exact_cycle(EngineSpec(hot, cold, beta_h=beta_h, beta_c=beta_c,
                                            xi=float(rng.uniform(0.05, 1.0))))
            scale = max(abs(result.q_hot), abs(result.q_cold), 1e-300)
            assert abs(result.work - (result.q_hot + result.q_cold)) <= 1e-12 * scale
            for populations in (result.pop_after_hot, result.pop_after_cold):
                assert math.fsum(populations) == pytest.approx(1.0, abs=1e-12)
                assert min(populations) >= 0.0

    @pytest.mark.parametrize("xi", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("beta_c", [0.01, 0.5, 3.0])
    def test_swap_prefactor_is_exact(self, asymmetric_three_level, xi, beta_c):
        full = exact_cycle(engine(asymmetric_three_level, 0.3, beta_c, beta_c / 2.0, 1.0))
        partial = exact_cycle(engine(asymmetric_three_level, 0.3, beta_c, beta_c / 2.0, xi))
        assert partial.work / full.work == pytest.approx(xi / (2.0 - xi), rel=1e-12)

    def test_efficiency_of_non_parallel_engine(self, asymmetric_three_level):
        cold = make_spectrum([-0.8, -0.5, 1.3])
        e = EngineSpec(asymmetric_three_level, cold, beta_h=0.05, beta_c=0.2, xi=0.7)
        p_hot = gibbs_populations(e.hot, e.beta_h)
        p_cold = gibbs_populations(e.cold, e.beta_c)
        after_hot, after_cold, _ = iterate_strokes(p_hot, p_cold, e.xi)
        delta = after_hot - after_cold
        q_hot = float(np.dot(e.hot.array, delta))
        work = q_hot - float(np.dot(e.cold.array, delta))
        assert exact_efficiency(e) == pytest.approx(work / q_hot, rel=1e-10)

    def test_no_compression_is_not_an_engine(self, two_level):
        with pytest.raises(NotAnEngineError):
            exact_efficiency(engine(two_level, 0.0, 0.2, 0.1))

    def test_cycle_report(self, asymmetric_three_level):
        e = engine(asymmetric_three_level, 0.3, 0.02, 0.01)
        row = cycle_report(e)
        assert list(row) == CYCLE_COLUMNS
        assert row["N"] == 3
        assert row["chi"] == pytest.approx(0.3)
        assert row["eta_exact"] == pytest.approx(0.3, abs=1e-12)
        assert row["work_corrected"] == pytest.approx(ultra_hot_work(e) + beta2_correction(e))

    def test_report_of_refrigerator(self, two_level):
        row = cycle_report(engine(two_level, 0.7, 0.02, 0.01))
        assert row["work_exact"] < 0
        assert math.isnan(row["eta_exact"])


class TestUltraHotWork:

    def test_identical_spectra(self, asymmetric_three_level):
        e = EngineSpec(asymmetric_three_level, asymmetric_three_level, beta_h=0.01, beta_c=0.03)
        assert ultra_hot_work(e) == pytest.approx(0.0, abs=1e-15)

    def test_anti_parallel(self, two_level):
        hot = two_level.array
        work = ultra_hot_work_levels(hot, -hot, beta_c=0.1, beta_h=0.1)
        assert work == pytest.approx(-4.0 * 0.1 * two_level.norm_sq / 2.0)
        assert work < 0

    @pytest.mark.parametrize("chi", [0.05, 0.2, 0.45, 0.7])
    @pytest.mark.parametrize("xi", [0.3, 1.0])
    def test_parallel_identity(self, asymmetric_three_level, chi, xi):
        e = engine(asymmetric_three_level, chi, 0.04, 0.02, xi)
        expected = parallel_work(chi, asymmetric_three_level.norm_sq, 0.04, e.eta_c, xi, 3)
        assert ultra_hot_work(e) == pytest.approx(expected, rel=1e-12)

    def test_parallel_work_values(self):
        assert parallel_work(0.0, 2.0, 1.0, 0.4, 1.0, 2) == 0.0
        assert parallel_work(0.4, 2.0, 1.0, 0.4, 1.0, 2) == pytest.approx(0.0, abs=1e-16)
        assert parallel_work(0.2, 2.0, 1.0, 0.4, 1.0, 2) == pytest.approx(0.04)
        assert universal_max_work(0.4, 2.0, 1.0, 1.0, 2) == pytest.approx(0.04)

    def test_parallel_spectra_are_optimal(self, asymmetric_three_level, rng):
        chi, beta_c, beta_h = 0.25, 0.04, 0.01
        hot = asymmetric_three_level.array
        cold_norm = (1.0 - chi) * asymmetric_three_level.norm
        best = ultra_hot_work_levels(hot, (1.0 - chi) * hot, beta_c, beta_h)
        samples = rng.normal(size=(10000, 3))
        samples -= samples.mean(axis=1, keepdims=True)
        samples *= cold_norm / np.linalg.norm(samples, axis=1, keepdims=True)
        found = max(ultra_hot_work_levels(hot, cold, beta_c, beta_h) for cold in samples)
        assert found <= best + 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(EngineSpecError):
            ultra_hot_work_levels([-1.0, 1.0], [-1.0, 0.0, 1.0], 0.2, 0.1)


class TestBeta2Correction:

    def test_two_level_vanishes(self, two_level):
        assert beta2_correction(engine(two_level, 0.3, 0.2, 0.1)) == pytest.approx(0.0, abs=1e-17)
        assert beta2_correction_levels([-1.0, 1.0], [-0.2, 0.2], 0.5, 0.1) == \
            pytest.approx(0.0, abs=1e-17)

    def test_symmetric_vanishes(self, symmetric_three_level):
        e = EngineSpec(symmetric_three_level, make_spectrum([-0.4, 0.0, 0.4]),
                       beta_h=0.1, beta_c=0.3)
        assert beta2_correction(e) == pytest.approx(0.0, abs=1e-17)

    def test_asymmetric_matches_exact_cycle(self, asymmetric_three_level):
        # (W_exact - W_ultra) / beta_c^2 tends to the correction coefficient as beta_c -> 0
        ratios = []
        for beta_c in (0.004, 0.002, 0.001):
            e = engine(asymmetric_three_level, 0.3, beta_c, beta_c / 2.0)
            ratios.append((exact_cycle(e).work - ultra_hot_work(e)) / beta2_correction(e))
        assert ratios[-1] == pytest.approx(1.0, abs=0.01)
        assert abs(ratios[-1] - 1.0) < abs(ratios[0] - 1.0)


class TestBathObservables:

    def test_maximally_mixed(self, symmetric_three_level):
        obs = bath_observables(symmetric_three_level, 0.0)
        assert obs.purity == pytest.approx(1.0 / 3.0)
        assert obs.purity_ultra == pytest.approx(1.0 / 3.0)
        assert obs.internal_energy == pytest.approx(0.0, abs=1e-16)
        assert obs.heat_capacity == 0.0

    def test_two_level(self, two_level):
        obs = bath_observables(two_level, 0.1)
        exact_purity = (math.exp(0.2) + math.exp(-0.2)) / (math.exp(0.1) + math.exp(-0.1)) ** 2
        assert obs.purity == pytest.approx(exact_purity, rel=1e-14)
        assert obs.purity_ultra == pytest.approx(0.505)
        assert obs.purity == pytest.approx(obs.purity_ultra, abs=1e-4)
        assert obs.heat_capacity_ultra == pytest.approx(0.01)
        assert obs.internal_energy == pytest.approx(-math.tanh(0.1), rel=1e-14)
        assert obs.internal_energy_ultra == pytest.approx(0.1)
        assert abs(obs.internal_energy + obs.internal_energy_ultra) < 1e-3
        assert set(obs.to_dict()) == {
            "internal_energy", "purity", "heat_capacity", "internal_energy_ultra",
            "purity_ultra", "heat_capacity_ultra",
        }
