"""Tests for the independent verification engines."""

import math
import warnings

import numpy as np
import pytest

from binoc import (
    ChannelBudget,
    DirectReceiverConfig,
    NoiseParams,
    he_ideal,
    he_noisy,
    helstrom_pe,
    ke_conditionals,
    ke_noisy,
    qe_ideal,
    re_noisy,
)
from binoc.entangled import beta_opt_full
from binoc.oracle import (
    DirectQuadrature,
    FockState,
    McEstimate,
    QuadratureConvergenceError,
    coherent_state,
    direct_error_quadrature,
    displaced_thermal_pmf,
    displaced_thermal_state,
    grid_argmin,
    helstrom_fock,
    mc_receiver,
    no_click_probability_quadrature,
    number_state,
    twb_state,
    vacuum_state,
)
from binoc.channel import SingleModeState

IDEAL = NoiseParams.ideal()


class TestFockState:
    def test_validation(self):
        with pytest.raises(ValueError):
            FockState(np.array([[0.5, 0.5j], [0.5j, 0.5]]))  # not Hermitian
        with pytest.raises(ValueError):
            FockState(np.diag([1.5, 0.0]))  # trace above one
        with pytest.raises(ValueError):
            FockState(np.diag([1.0, -0.5]))  # negative eigenvalue
        st = coherent_state(1.0, 30)
        assert st.dim == 30
        assert st.trace_deficit <= 1e-12

    def test_thermal_diagonal(self):
        st = displaced_thermal_state(0.0, 0.5, 40)
        diag = np.diag(st.matrix).real
        expected = (0.5 / 1.5) ** np.arange(40) / 1.5
        assert np.allclose(diag, expected, atol=1e-15)


class TestHelstromFock:
    def test_identical_states_give_coin_flip(self):
        st = coherent_state(1.0, 30)
        assert helstrom_fock(st, st) == pytest.approx(0.5, abs=1e-12)

    def test_orthogonal_states_discriminate_perfectly(self):
        assert helstrom_fock(number_state(0, 10), number_state(1, 10)) == pytest.approx(
            0.0, abs=1e-14
        )

    @pytest.mark.parametrize("n", [0.25, 0.5, 1.0, 2.0])
    def test_coherent_pair_matches_closed_form(self, n):
        pe = helstrom_fock(vacuum_state(40), coherent_state(math.sqrt(2.0 * n), 40))
        assert abs(pe - helstrom_pe(n)) <= 1e-8

    @pytest.mark.parametrize("n", [1.0, 1.5, 2.0])
    def test_truncation_error_falls_with_dimension(self, n):
        errs = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # dim-10 truncation deficit is the point
            for dim in (10, 20, 40):
                pe = helstrom_fock(vacuum_state(dim), coherent_state(math.sqrt(2 * n), dim))
                errs.append(abs(pe - helstrom_pe(n)))
        assert errs[0] > errs[1] > errs[2]

    def test_warns_on_large_truncation_deficit(self):
        with pytest.warns(UserWarning, match="trace"):
            helstrom_fock(vacuum_state(6), coherent_state(2.0, 6))

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(ValueError):
            helstrom_fock(vacuum_state(10), vacuum_state(12))

    def test_displaced_twin_beam_pair_matches_bound(self):
        # small twin-beam energy keeps the joint truncation honest
        budget = ChannelBudget(1.5, 0.4)
        lam = budget.twb_parameter
        s0 = twb_state(lam, 14)
        s1 = twb_state(lam, 14, displacement=budget.signal_amplitude)
        pe = helstrom_fock(s0, s1)
        assert abs(pe - qe_ideal(1.5, 0.4)) <= 1e-6


class TestDisplacedThermalPmf:
    @pytest.mark.parametrize(
        "amp,w,eta", [(1.3, 0.2, 0.8), (0.0, 0.5, 0.95), (2.5, 0.05, 0.6), (0.0, 0.0, 0.5)]
    )
    def test_no_click_weight_matches_closed_form(self, amp, w, eta):
        # sum_n (1-eta)^n p(n) is the no-click probability of the
        # efficiency-eta detector on this state
        p = displaced_thermal_pmf(amp, w, 256)
        lhs = float(np.sum((1 - eta) ** np.arange(256) * p))
        rhs = math.exp(-eta * amp * amp / (1 + eta * w)) / (1 + eta * w)
        assert abs(lhs - rhs) <= 1e-12

    def test_matches_density_matrix_diagonal(self):
        p = displaced_thermal_pmf(1.2, 0.3, 128)
        diag = np.diag(displaced_thermal_state(1.2, 0.3, 128).matrix).real
        assert np.max(np.abs(p[:100] - diag[:100])) <= 1e-10

    def test_vacuum_is_deterministic(self):
        p = displaced_thermal_pmf(0.0, 0.0, 64)
        assert p[0] == pytest.approx(1.0, abs=1e-15)
        assert np.all(p[1:] <= 1e-15)

    def test_rejects_insufficient_cutoff(self):
        with pytest.raises(ValueError):
            displaced_thermal_pmf(6.0, 0.5, 16)


class TestNoClickQuadrature:
    def test_vacuum_never_clicks(self):
        cfg = DirectReceiverConfig(0.9)
        val = no_click_probability_quadrature(SingleModeState(0.0, 0.0), 0.0, cfg, 1.0)
        assert val == pytest.approx(1.0, abs=1e-9)

    def test_displaced_arm_click_probability(self):
        # ideal case: no-click on the bright arm is exp(-alpha^2 cos^2 phi)
        n, tau = 1.0, 0.8
        alpha = math.sqrt(2.0 * n)
        cfg = DirectReceiverConfig(tau)
        reference = -alpha / math.tan(cfg.mixing_angle)
        val = no_click_probability_quadrature(
            SingleModeState(0.0, 0.0), reference, cfg, 1.0
        )
        assert val == pytest.approx(math.exp(-alpha * alpha * tau), abs=1e-9)

    def test_refinement_convergence(self):
        cfg = DirectReceiverConfig(0.95)
        state = SingleModeState(1.1, 0.15)
        coarse = no_click_probability_quadrature(state, -0.7, cfg, 0.85, tol=1e-8)
        fine = no_click_probability_quadrature(state, -0.7, cfg, 0.85, tol=1e-12)
        assert abs(coarse - fine) < 1e-8

    def test_raises_when_refinement_exhausted(self):
        cfg = DirectReceiverConfig(0.95)
        with pytest.raises(QuadratureConvergenceError):
            no_click_probability_quadrature(
                SingleModeState(1.0, 0.1), -0.5, cfg, 0.9, tol=1e-18, max_refinements=1
            )

    def test_full_noisy_case_matches_conditionals(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            n = rng.uniform(0.1, 6.0)
            cfg = DirectReceiverConfig(rng.uniform(0.8, 0.999))
            noise = NoiseParams(
                rng.uniform(0.6, 1.0), rng.uniform(0.0, 0.3), rng.uniform(0.0, 0.3)
            )
            quad = direct_error_quadrature(n, cfg, noise)
            cond = ke_conditionals(n, cfg, noise)
            assert abs(quad.infer_zero_given_alpha - cond.infer_zero_given_alpha) <= 1e-6
            assert abs(quad.infer_alpha_given_zero - cond.infer_alpha_given_zero) <= 1e-6
            assert abs(quad.error_probability - ke_noisy(n, cfg, noise)) <= 1e-6

    def test_unit_transmissivity_limit(self):
        quad = direct_error_quadrature(1.0, DirectReceiverConfig(1.0), IDEAL)
        assert isinstance(quad, DirectQuadrature)
        assert quad.error_probability == pytest.approx(math.exp(-2.0) / 2.0, abs=1e-9)
        assert quad.infer_zero_given_alpha == pytest.approx(0.0, abs=1e-9)


class TestMcReceiver:
    def test_deterministic_given_seed(self):
        a = mc_receiver("homodyne", n=1.0, shots=10**4, seed=7)
        b = mc_receiver("homodyne", n=1.0, shots=10**4, seed=7)
        assert a == b
        c = mc_receiver("homodyne", n=1.0, shots=10**4, seed=8)
        assert a.mean != c.mean or a.seed != c.seed

    def test_std_err_formula(self):
        est = mc_receiver("homodyne", n=1.0, shots=10**4, seed=7)
        assert est.std_err == pytest.approx(
            math.sqrt(est.mean * (1 - est.mean) / est.shots), rel=1e-12
        )
        assert isinstance(est, McEstimate)
        assert est.shots == 10**4 and est.seed == 7

    def test_rejects_insufficient_shots(self):
        with pytest.raises(ValueError):
            mc_receiver("homodyne", n=1.0, shots=999, seed=0)

    def test_rejects_unknown_receiver(self):
        with pytest.raises(ValueError):
            mc_receiver("kennedy", n=1.0, shots=10**4, seed=0)

    def test_calibration_coverage(self):
        # ~99.7% of seeded runs should land within three standard errors
        target = he_ideal(1.0)
        hits = sum(
            1
            for seed in range(50)
            if abs(mc_receiver("homodyne", n=1.0, shots=10**5, seed=seed).mean - target)
            <= 3 * mc_receiver("homodyne", n=1.0, shots=10**5, seed=seed).std_err
        )
        assert hits >= 47

    def test_homodyne_ideal_agreement(self):
        est = mc_receiver("homodyne", n=1.0, shots=10**6, seed=3)
        assert abs(est.mean - he_ideal(1.0)) <= 3 * est.std_err

    def test_homodyne_noisy_agreement(self):
        noise = NoiseParams(0.8, 0.2, 0.15)
        est = mc_receiver("homodyne", n=1.5, noise=noise, shots=10**6, seed=4)
        assert abs(est.mean - he_noisy(1.5, noise)) <= 3 * est.std_err

    def test_heterodyne_noisy_agreement(self):
        noise = NoiseParams(0.85, 0.1, 0.05)
        beta = beta_opt_full(5.0, noise)
        est = mc_receiver("heterodyne", n=5.0, noise=noise, beta=beta, shots=10**6, seed=5)
        assert abs(est.mean - re_noisy(5.0, beta, noise)) <= 3 * est.std_err

    def test_direct_noisy_agreement(self):
        noise = NoiseParams(0.95, 0.1, 0.1)
        est = mc_receiver(
            "direct", n=1.0, noise=noise, transmissivity=0.99, shots=10**6, seed=6
        )
        assert abs(est.mean - ke_noisy(1.0, DirectReceiverConfig(0.99), noise)) <= 3 * est.std_err

    def test_direct_ideal_nulled_arm_is_silent(self):
        # tau = 1 with a matched reference: the displaced symbol cannot click,
        # so every error is a missing click on the other symbol
        est = mc_receiver("direct", n=1.0, transmissivity=1.0, shots=10**6, seed=9)
        assert abs(est.mean - math.exp(-2.0) / 2.0) <= 3 * est.std_err


class TestGridArgmin:
    def test_recovers_ideal_entanglement_fraction(self):
        from binoc import re_ideal

        res = grid_argmin(lambda b: re_ideal(1.0, b), (0.0, 0.999), 1e-6)
        assert abs(res.argmin - 0.25) <= 1e-6
        assert not res.degenerate

    def test_constant_function_flags_degeneracy(self):
        res = grid_argmin(lambda _: 1.0, (0.0, 1.0), 1e-6)
        assert res.degenerate

    def test_boundary_minimum(self):
        res = grid_argmin(lambda x: x, (0.0, 1.0), 1e-6)
        assert res.argmin <= 1e-6

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            grid_argmin(lambda x: x, (1.0, 0.0), 1e-6)
        with pytest.raises(ValueError):
            grid_argmin(lambda x: x, (0.0, 1.0), 0.0)
