"""Twin-beam entangled channel with heterodyne (multiport homodyne) readout.

The binary alphabet is {twin beam, displaced twin beam} at total channel
energy N, of which a fraction beta funds the twin-beam photons and the rest
the signal displacement.  The receiver measures the complex operator
a - b^dag; its outcome distribution is an isotropic complex Gaussian whose
variance shrinks below the coherent-state value as the entanglement grows,
which is what buys the error-probability advantage at high energy.

Heterodyne and multiport homodyne schemes measure the same operator and are
treated as one receiver with a single effective efficiency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .channel import (
    ChannelBudget,
    NoiseParams,
    delta_lambda_sq,
    erf,
    evolve_two_mode,
)

__all__ = [
    "HeterodyneVariance",
    "SeparabilityReport",
    "heterodyne_variance_sq",
    "qe_ideal",
    "re_ideal",
    "beta_opt_ideal",
    "re_noisy",
    "re_with_threshold",
    "beta_opt_full",
    "separability",
    "survival_gamma_t",
    "survival_fraction",
    "survival_fraction_printed",
]


@dataclass(frozen=True)
class HeterodyneVariance:
    """Variance of the complex heterodyne outcome distribution.

    At zero noise this is the twin-beam value (1 - lambda)/(1 + lambda) <= 1;
    propagation and detection noise add to it.
    """

    value: float

    def __post_init__(self) -> None:
        if not self.value > 0.0:
            raise ValueError(f"heterodyne variance must be > 0, got {self.value}")

    @classmethod
    def ideal(cls, n_twb: float) -> "HeterodyneVariance":
        return cls(delta_lambda_sq(n_twb))

    @classmethod
    def noisy(cls, n_twb: float, noise: NoiseParams) -> "HeterodyneVariance":
        return cls(heterodyne_variance_sq(n_twb, noise))


@dataclass(frozen=True)
class SeparabilityReport:
    """Entanglement diagnostics of the evolved twin beam.

    ``survival_gamma_t`` is the damping product beyond which the state turns
    separable (infinite when the bath is at zero temperature);
    ``survival_fraction`` is the smallest entanglement fraction that keeps
    the evolved state entangled, or None when no fraction below 1 does.
    """

    is_entangled: bool
    sigma_minus_sq: float
    survival_gamma_t: float
    survival_fraction: float | None


def heterodyne_variance_sq(n_twb, noise: NoiseParams | None = None):
    """Variance of the noisy heterodyne outcome for a twin beam of
    ``n_twb`` photons.

    Composed of the thermal buildup ``(1 + 2M)(1 - e^{-gamma_t})``, the
    decayed twin-beam variance, and the detector smearing ``(1 - eta)/eta``.
    Equals four times the evolved difference-quadrature variance plus the
    detector term.
    """
    if noise is None:
        noise = NoiseParams.ideal()
    one_minus_decay = -math.expm1(-noise.gamma_t)
    out = (
        (1.0 + 2.0 * noise.m_thermal) * one_minus_decay
        + delta_lambda_sq(n_twb) * noise.decay
        + (1.0 - noise.eta) / noise.eta
    )
    return float(out) if np.ndim(n_twb) == 0 else out


def _check_energy(n) -> np.ndarray:
    arr = np.asarray(n, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("channel energy must be >= 0")
    return arr


def _check_fraction(beta) -> np.ndarray:
    arr = np.asarray(beta, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise ValueError(
            "entanglement fraction must lie in [0, 1); beta = 1 would need "
            "an infinitely energetic twin beam"
        )
    return arr


def _ret(x, template):
    return float(x) if np.ndim(template) == 0 else x


def _ret2(x, n, beta):
    return float(x) if np.ndim(n) == 0 and np.ndim(beta) == 0 else x


def qe_ideal(n, beta):
    """Minimum (optimal-measurement) error probability of the ideal
    twin-beam channel.

    (1 - sqrt(1 - q)) / 2 with q = exp(-2 N (1 - beta)(1 + beta N)),
    evaluated as q / (2 (1 + sqrt(1 - q))) to stay exact for tiny q.  At
    beta = 0 this is the single-mode optimal bound.
    """
    arr = _check_energy(n)
    b = _check_fraction(beta)
    q = np.exp(-2.0 * arr * (1.0 - b) * (1.0 + b * arr))
    out = q / (2.0 * (1.0 + np.sqrt(1.0 - q)))
    return _ret2(out, n, beta)


def re_ideal(n, beta):
    """Ideal heterodyne error probability erfc(alpha / (2 Delta_lambda)) / 2
    at the optimal threshold alpha/2."""
    arr = _check_energy(n)
    b = _check_fraction(beta)
    alpha = np.sqrt(2.0 * arr * (1.0 - b))
    out = 0.5 * erfc(0.5 * alpha / np.sqrt(delta_lambda_sq(b * arr)))
    return _ret2(out, n, beta)


def beta_opt_ideal(n):
    """Entanglement fraction minimizing the ideal heterodyne error,
    N / (2 (1 + N)); grows from 0 toward 1/2 with the channel energy."""
    arr = np.asarray(n, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("channel energy must be > 0 to split")
    out = arr / (2.0 * (1.0 + arr))
    return _ret(out, n)


def re_noisy(n, beta, noise: NoiseParams | None = None):
    """Noisy heterodyne error probability at the optimal threshold
    alpha e^{-gamma_t/2} / 2.

    erfc(alpha e^{-gamma_t/2} / (2 Delta)) / 2 with Delta^2 the noisy
    heterodyne variance; reduces exactly to :func:`re_ideal` at zero noise.
    """
    noise = noise or NoiseParams.ideal()
    arr = _check_energy(n)
    b = _check_fraction(beta)
    alpha = np.sqrt(2.0 * arr * (1.0 - b))
    d_sq = heterodyne_variance_sq(b * arr, noise)
    out = 0.5 * erfc(0.5 * alpha * noise.amplitude_decay / np.sqrt(d_sq))
    return _ret2(out, n, beta)


def re_with_threshold(n, beta, noise: NoiseParams | None = None, threshold: float = 0.0):
    """Heterodyne error probability at an arbitrary real-part threshold.

    Two-tail error of the rule "Re(outcome) > threshold means the displaced
    symbol"; minimized at threshold = alpha e^{-gamma_t/2} / 2, where it
    coincides with :func:`re_noisy`.
    """
    noise = noise or NoiseParams.ideal()
    arr = _check_energy(n)
    b = _check_fraction(beta)
    alpha_prime = np.sqrt(2.0 * arr * (1.0 - b)) * noise.amplitude_decay
    d = np.sqrt(heterodyne_variance_sq(b * arr, noise))
    out = 0.5 * (
        1.0 - 0.5 * (erf(threshold / d) + erf((alpha_prime - threshold) / d))
    )
    return _ret2(out, n, beta)


def beta_opt_full(n, noise: NoiseParams | None = None):
    """Entanglement fraction minimizing the noisy heterodyne error.

    Stationarity of the error with respect to the twin-beam variance is a
    quadratic, so the optimum is closed-form: with E = e^{-gamma_t} and the
    variance floor c = (1 + 2M)(1 - E) + (1 - eta)/eta, the optimal
    twin-beam variance is

        D* = (E + sqrt(E^2 + c (c + 2 E (1 + N)))) / (c + 2 E (1 + N)),

    carrying N_twb = (1 - D*)^2 / (2 D*) photons.  Reduces exactly to
    N / (2 (1 + N)) at zero noise, and decreases as the channel gets
    noisier: a noisy channel rewards entanglement less.
    """
    noise = noise or NoiseParams.ideal()
    arr = np.asarray(n, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("channel energy must be > 0 to split")
    e = noise.decay
    c = (1.0 + 2.0 * noise.m_thermal) * -math.expm1(-noise.gamma_t) + (
        1.0 - noise.eta
    ) / noise.eta
    den = c + 2.0 * e * (1.0 + arr)
    d_star = (e + np.sqrt(e * e + c * den)) / den
    n_twb = (1.0 - d_star) ** 2 / (2.0 * d_star)
    return _ret(n_twb / arr, n)


def survival_gamma_t(n_twb: float, m_thermal: float) -> float:
    """Damping product at which a twin beam of ``n_twb`` photons turns
    separable; infinite at zero bath temperature."""
    if n_twb < 0.0:
        raise ValueError("twin-beam photon number must be >= 0")
    if m_thermal < 0.0:
        raise ValueError("thermal occupation must be >= 0")
    if m_thermal == 0.0:
        return math.inf
    # sqrt(n(n+2)) - n, rationalized to stay accurate for large n
    gap = 2.0 * n_twb / (math.sqrt(n_twb * (n_twb + 2.0)) + n_twb) if n_twb else 0.0
    return math.log1p(gap / (2.0 * m_thermal))


def survival_fraction(n: float, noise: NoiseParams) -> float | None:
    """Smallest entanglement fraction whose evolved twin beam is still at
    the separability boundary, solved from sigma_minus^2 = 1/4.

    With g = 2 M (e^{gamma_t} - 1) the boundary fraction is
    g^2 / (2 N (1 - g)); when g >= 1, or when the boundary fraction itself
    reaches 1, no physical fraction restores entanglement and None is
    returned.
    """
    if n <= 0.0:
        raise ValueError("channel energy must be > 0")
    g = 2.0 * noise.m_thermal * math.expm1(noise.gamma_t)
    if g >= 1.0:
        return None
    beta_s = g * g / (2.0 * n * (1.0 - g))
    return beta_s if beta_s < 1.0 else None


def survival_fraction_printed(n: float, noise: NoiseParams) -> float:
    """Diagnostic companion to :func:`survival_fraction` with the energy in
    place of the thermal occupation in the denominator.

    Kept only for comparison: it does not put the evolved state on the
    sigma_minus^2 = 1/4 boundary (the derived form does), and it can leave
    the physical range.  NaN when the denominator vanishes.
    """
    if n <= 0.0:
        raise ValueError("channel energy must be > 0")
    em1 = math.expm1(noise.gamma_t)
    den = n * (1.0 - 2.0 * n * em1)
    if den == 0.0:
        return math.nan
    return 2.0 * noise.m_thermal**2 * em1**2 / den


def separability(budget: ChannelBudget, noise: NoiseParams) -> SeparabilityReport:
    """Entanglement diagnostics of the evolved twin beam for a given energy
    split and noise level.

    The evolved state is entangled exactly when its difference-quadrature
    variance stays strictly below the vacuum value 1/4.
    """
    state = evolve_two_mode(budget, 0, noise)
    return SeparabilityReport(
        is_entangled=state.sigma_minus_sq < 0.25,
        sigma_minus_sq=state.sigma_minus_sq,
        survival_gamma_t=survival_gamma_t(budget.twb_photons, noise.m_thermal),
        survival_fraction=survival_fraction(budget.total_energy, noise),
    )
