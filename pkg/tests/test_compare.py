"""Tests for the receiver-comparison functionals and crossover machinery."""

import math

import numpy as np
import pytest

from binoc import (
    ComparisonParams,
    DirectReceiverConfig,
    NoiseParams,
    a_e,
    asymptotic_floor,
    b_e,
    c_e,
    find_crossovers,
    he_ideal,
    helstrom_pe,
    ke_ideal,
    ke_noisy,
    receiver_regime_table,
)
from binoc.oracle import coherent_state, helstrom_fock, vacuum_state


class TestHelstromPe:
    def test_trivia(self):
        assert helstrom_pe(0.0) == 0.5
        assert helstrom_pe(1e4) == pytest.approx(0.0, abs=1e-300)
        with pytest.raises(ValueError):
            helstrom_pe(-1.0)

    def test_unit_energy_against_fock_oracle(self):
        oracle = helstrom_fock(vacuum_state(40), coherent_state(math.sqrt(2.0), 40))
        assert abs(helstrom_pe(1.0) - oracle) <= 1e-8

    def test_floor_under_ideal_receivers(self):
        ns = np.geomspace(0.01, 10, 50)
        assert np.all(helstrom_pe(ns) <= ke_ideal(ns, DirectReceiverConfig(1.0)) + 1e-15)
        assert np.all(helstrom_pe(ns) <= he_ideal(ns) + 1e-15)


class TestComparisonFunctions:
    def test_ae_ideal_low_energy_favors_homodyne(self):
        assert a_e(0.5, 1.0, 1.0, transmissivity=1.0 - 1e-9) > 0.0

    def test_ae_ideal_tau09_threshold_near_1_10(self):
        assert a_e(1.09, 1.0, 1.0, transmissivity=0.9) > 0.0
        assert a_e(1.11, 1.0, 1.0, transmissivity=0.9) < 0.0

    def test_ae_noisy_sign_pattern(self):
        # realistic efficiencies, gamma_t = M = 0.1: homodyne loses in the
        # middle band and wins again at large energy
        kw = dict(gamma_t=0.1, m_thermal=0.1, transmissivity=0.99)
        assert a_e(2.0, 0.95, 0.85, **kw) < 0.0
        assert a_e(9.0, 0.95, 0.85, **kw) > 0.0
        assert a_e(0.3, 0.95, 0.85, **kw) > 0.0

    def test_be_ideal_signs(self):
        assert b_e(6.0, 1.0, 1.0) > 0.0
        assert b_e(2.0, 1.0, 1.0) < 0.0

    def test_be_noisy_sign_flip_between_roots(self):
        kw = dict(gamma_t=0.1, m_thermal=0.05, transmissivity=0.99)
        ns = np.arange(1e-3, 12.0, 1e-3)
        vals = b_e(ns, 0.95, 0.85, **kw)
        flips = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        assert len(flips) == 2
        lo, hi = ns[flips[0]], ns[flips[1]]
        mid = 0.5 * (lo + hi)
        assert b_e(mid, 0.95, 0.85, **kw) < 0.0

    def test_ce_ideal_single_root_at_two(self):
        assert c_e(1.9, 1.0) < 0.0
        assert c_e(2.1, 1.0) > 0.0
        assert c_e(0.01, 1.0) < 0.0
        assert c_e(50.0, 1.0) > 0.0

    def test_ce_threshold_grows_with_damping(self):
        p_small = ComparisonParams(eta_hom=0.85, eta_het=0.85, gamma_t=0.01, m_thermal=0.1)
        p_large = ComparisonParams(eta_hom=0.85, eta_het=0.85, gamma_t=0.2, m_thermal=0.1)
        r_small = find_crossovers("het-vs-hom", p_small, 30.0)
        r_large = find_crossovers("het-vs-hom", p_large, 30.0)
        assert len(r_small.thresholds) == len(r_large.thresholds) == 1
        assert r_large.thresholds[0] > r_small.thresholds[0]


IDEAL_PARAMS = ComparisonParams(eta_ken=1.0, eta_hom=1.0, eta_het=1.0)


class TestFindCrossovers:
    def test_ideal_hom_vs_direct_near_unit_transmissivity(self):
        params = ComparisonParams(eta_ken=1.0, eta_hom=1.0, transmissivity=1.0 - 1e-9)
        report = find_crossovers("hom-vs-direct", params, 3.0)
        assert len(report.thresholds) == 1
        assert report.thresholds[0] == pytest.approx(0.77, abs=0.01)
        labels = [r.receiver for r in report.regimes]
        assert labels == ["homodyne", "direct"]

    def test_ideal_hom_vs_direct_tau09(self):
        params = ComparisonParams(eta_ken=1.0, eta_hom=1.0, transmissivity=0.9)
        report = find_crossovers("hom-vs-direct", params, 3.0)
        assert report.thresholds[0] == pytest.approx(1.10, abs=0.01)

    def test_ideal_het_vs_direct_upper_threshold(self):
        report = find_crossovers("het-vs-direct", IDEAL_PARAMS, 10.0)
        assert len(report.thresholds) == 2
        assert report.thresholds[-1] == pytest.approx(4.46, abs=0.02)
        labels = [r.receiver for r in report.regimes]
        assert labels == ["heterodyne", "direct", "heterodyne"]

    def test_noisy_hom_vs_direct_two_roots(self):
        params = ComparisonParams(gamma_t=0.05, m_thermal=0.05)
        report = find_crossovers("hom-vs-direct", params, 15.0)
        assert len(report.thresholds) == 2

    def test_root_certification(self):
        params = ComparisonParams(gamma_t=0.1, m_thermal=0.1)
        for pair in ("hom-vs-direct", "het-vs-direct", "het-vs-hom"):
            report = find_crossovers(pair, params, 15.0)
            fn = {
                "hom-vs-direct": lambda n: a_e(n, 0.95, 0.85, 0.1, 0.1, 0.99),
                "het-vs-direct": lambda n: b_e(n, 0.95, 0.85, 0.1, 0.1, 0.99),
                "het-vs-hom": lambda n: c_e(n, 0.85, 0.1, 0.1),
            }[pair]
            for root in report.thresholds:
                assert fn(root - 1e-5) * fn(root + 1e-5) < 0.0

    def test_regimes_partition_and_alternate(self):
        params = ComparisonParams(gamma_t=0.1, m_thermal=0.1)
        report = find_crossovers("hom-vs-direct", params, 15.0)
        assert report.regimes[0].n_lo == 0.0
        assert report.regimes[-1].n_hi == 15.0
        for left, right in zip(report.regimes, report.regimes[1:]):
            assert left.n_hi == right.n_lo
            assert left.receiver != right.receiver
        assert tuple(sorted(report.thresholds)) == report.thresholds

    def test_no_crossover_is_a_result(self):
        # the ideal het-vs-hom root sits at 2; scanning below it finds none
        report = find_crossovers("het-vs-hom", IDEAL_PARAMS, 1.5)
        assert report.thresholds == ()
        assert len(report.regimes) == 1
        assert report.regimes[0].receiver == "homodyne"

    def test_boundary_uncertain_flag(self):
        # root at 2.0 lands within one scan step of n_max = 2.001
        report = find_crossovers("het-vs-hom", IDEAL_PARAMS, 2.001)
        assert len(report.thresholds) == 1
        assert report.boundary_uncertain[0]

    def test_het_vs_hom_requires_common_efficiency(self):
        with pytest.raises(ValueError):
            find_crossovers(
                "het-vs-hom", ComparisonParams(eta_hom=0.9, eta_het=0.85), 5.0
            )

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            find_crossovers("direct-vs-direct", IDEAL_PARAMS, 5.0)
        with pytest.raises(ValueError):
            find_crossovers("hom-vs-direct", IDEAL_PARAMS, 0.0)


class TestRegimeTable:
    def test_ideal_three_receiver_table(self):
        report = receiver_regime_table(IDEAL_PARAMS, 10.0)
        assert [r.receiver for r in report.regimes] == [
            "homodyne",
            "direct",
            "heterodyne",
        ]
        assert report.thresholds[0] == pytest.approx(0.79, abs=0.02)
        assert report.thresholds[1] == pytest.approx(4.46, abs=0.02)

    def test_partition(self):
        report = receiver_regime_table(ComparisonParams(gamma_t=0.05, m_thermal=0.05), 12.0)
        assert report.regimes[0].n_lo == 0.0
        assert report.regimes[-1].n_hi == 12.0
        for left, right in zip(report.regimes, report.regimes[1:]):
            assert left.n_hi == right.n_lo
            assert left.receiver != right.receiver


class TestAsymptoticFloor:
    def test_zero_temperature_floor_vanishes(self):
        assert asymptotic_floor("direct", ComparisonParams()) == 0.0

    def test_quadrature_receivers_have_no_floor(self):
        params = ComparisonParams(gamma_t=0.3, m_thermal=0.4)
        assert asymptotic_floor("homodyne", params) == 0.0
        assert asymptotic_floor("heterodyne", params) == 0.0

    def test_direct_floor_matches_large_energy_value(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            params = ComparisonParams(
                eta_ken=rng.uniform(0.6, 1.0),
                gamma_t=rng.uniform(0.01, 0.4),
                m_thermal=rng.uniform(0.01, 0.4),
                transmissivity=rng.uniform(0.8, 1.0),
            )
            floor = asymptotic_floor("direct", params)
            val = ke_noisy(
                1e4,
                DirectReceiverConfig(params.transmissivity),
                NoiseParams(params.eta_ken, params.gamma_t, params.m_thermal),
            )
            assert abs(val - floor) <= 1e-6

    def test_unknown_receiver(self):
        with pytest.raises(ValueError):
            asymptotic_floor("kennedy", ComparisonParams())
