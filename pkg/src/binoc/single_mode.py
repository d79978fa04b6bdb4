"""Error probabilities for the single-mode receivers.

Two receivers discriminate the binary alphabet {vacuum, |alpha>} at fixed
channel energy N = alpha^2 / 2:

* direct (on/off) detection behind a beam splitter that nulls the displaced
  symbol against a matched coherent reference, and
* homodyne detection of the signal quadrature against a decision threshold.

Every probability below is the equal-prior average error, lies in (0, 1/2]
and is evaluated through the complementary error function so that large
arguments never suffer cancellation.  Energy arguments accept scalars or
arrays; N = 0 returns exactly 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import erfc

from .channel import NoiseParams, SingleModeState, erf

__all__ = [
    "DEFAULT_TRANSMISSIVITY",
    "DirectReceiverConfig",
    "DecisionThreshold",
    "OnOffConditionals",
    "ke_ideal",
    "ke_noisy",
    "ke_conditionals",
    "homodyne_density",
    "he_ideal",
    "he_noisy",
    "he_with_threshold",
]

# Figure-caption default for the nulling beam splitter; CLI-overridable.
DEFAULT_TRANSMISSIVITY = 0.99


@dataclass(frozen=True)
class DirectReceiverConfig:
    """Beam-splitter transmissivity tau = cos^2(phi) of the on/off receiver."""

    transmissivity: float = DEFAULT_TRANSMISSIVITY

    def __post_init__(self) -> None:
        if not 0.0 < self.transmissivity <= 1.0:
            raise ValueError(
                f"transmissivity must lie in (0, 1], got {self.transmissivity}"
            )

    @property
    def mixing_angle(self) -> float:
        """Beam-splitter angle phi with cos^2(phi) = transmissivity."""
        return math.acos(math.sqrt(self.transmissivity))


@dataclass(frozen=True)
class DecisionThreshold:
    """Quadrature threshold of the homodyne inference rule (infer the
    displaced symbol when the outcome exceeds it)."""

    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError(f"threshold must be finite, got {self.value}")


class OnOffConditionals(NamedTuple):
    """Conditional misinference probabilities of the on/off receiver."""

    infer_zero_given_alpha: float
    infer_alpha_given_zero: float


def _check_energy(n) -> np.ndarray:
    arr = np.asarray(n, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("channel energy must be >= 0")
    return arr


def _ret(x, template):
    return float(x) if np.ndim(template) == 0 else x


def ke_ideal(n, cfg: DirectReceiverConfig | None = None):
    """Ideal on/off receiver error probability exp(-2 N tau) / 2.

    The nulled arm never clicks, so the only error is a missing click on the
    displaced arm.
    """
    cfg = cfg or DirectReceiverConfig()
    arr = _check_energy(n)
    out = 0.5 * np.exp(-2.0 * arr * cfg.transmissivity)
    return _ret(out, n)


def ke_conditionals(
    n, cfg: DirectReceiverConfig | None = None, noise: NoiseParams | None = None
) -> OnOffConditionals:
    """Both conditional error terms of the noisy on/off receiver.

    The reference beam is noise-matched to the decayed amplitude, so the
    displaced symbol still maps onto a (thermal) vacuum at the detector:
    a click on that arm can only come from thermal photons, while the
    undisplaced symbol fails only when the bright arm yields no click.
    """
    cfg = cfg or DirectReceiverConfig()
    noise = noise or NoiseParams.ideal()
    arr = _check_energy(n)
    tau = cfg.transmissivity
    one_minus_decay = -math.expm1(-noise.gamma_t)
    sigma = noise.eta * noise.m_thermal * tau * one_minus_decay
    infer_zero = sigma / (1.0 + sigma)
    infer_alpha = np.exp(
        -2.0 * arr * noise.eta * noise.decay * tau / (1.0 + sigma)
    ) / (1.0 + sigma)
    return OnOffConditionals(
        infer_zero_given_alpha=_ret(np.full_like(arr, infer_zero), n),
        infer_alpha_given_zero=_ret(infer_alpha, n),
    )


def ke_noisy(
    n, cfg: DirectReceiverConfig | None = None, noise: NoiseParams | None = None
):
    """Average error probability of the on/off receiver with loss, thermal
    noise and finite detector efficiency.

    Reduces exactly to :func:`ke_ideal` at zero noise; for N -> infinity it
    saturates at the thermal click floor
    ``sigma / (2 (1 + sigma))`` with ``sigma = eta M tau (1 - exp(-gamma_t))``.
    """
    k0a, ka0 = ke_conditionals(n, cfg, noise)
    out = 0.5 * (np.asarray(k0a) + np.asarray(ka0))
    return _ret(out, n)


def homodyne_density(x, state: SingleModeState, eta: float = 1.0):
    """Probability density of the homodyne outcome ``x`` for a displaced
    thermal input measured with quantum efficiency ``eta``.

    A Gaussian centred on the state's amplitude with variance
    ``1/4 + thermal_mean/2 + (1 - eta)/(4 eta)``: the vacuum quadrature
    noise, the thermal broadening, and the Gaussian smearing of the
    imperfect detector.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"detector efficiency must lie in (0, 1], got {eta}")
    var = 0.25 + 0.5 * state.thermal_mean + (1.0 - eta) / (4.0 * eta)
    arr = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * (arr - state.amplitude) ** 2 / var) / np.sqrt(
        2.0 * np.pi * var
    )
    return _ret(out, x)


def he_ideal(n):
    """Ideal homodyne error probability erfc(sqrt(N)) / 2.

    Uses the optimal threshold alpha/2 midway between the two outcome
    distributions.
    """
    arr = _check_energy(n)
    out = 0.5 * erfc(np.sqrt(arr))
    return _ret(out, n)


def he_noisy(n, noise: NoiseParams | None = None):
    """Noisy homodyne error probability at the optimal threshold.

    erfc(sqrt(eta N) e^{-gamma_t/2} / sqrt(1 + 2 eta M (1 - e^{-gamma_t}))) / 2;
    reduces exactly to :func:`he_ideal` at zero noise and vanishes as
    N -> infinity for any noise level.
    """
    noise = noise or NoiseParams.ideal()
    arr = _check_energy(n)
    one_minus_decay = -math.expm1(-noise.gamma_t)
    denom = math.sqrt(1.0 + 2.0 * noise.eta * noise.m_thermal * one_minus_decay)
    out = 0.5 * erfc(np.sqrt(noise.eta * arr) * noise.amplitude_decay / denom)
    return _ret(out, n)


def he_with_threshold(
    n, noise: NoiseParams | None = None, threshold: DecisionThreshold | float = 0.0
):
    """Homodyne error probability at an arbitrary decision threshold.

    Evaluates the two-tail error of the rule "outcome > threshold means the
    displaced symbol".  Minimized at threshold = alpha e^{-gamma_t/2} / 2;
    any fixed threshold tends to 1/2 when it runs off to +-infinity.
    """
    noise = noise or NoiseParams.ideal()
    lam = threshold.value if isinstance(threshold, DecisionThreshold) else float(threshold)
    arr = _check_energy(n)
    state_var = 0.25 + 0.5 * noise.thermal_buildup + (1.0 - noise.eta) / (
        4.0 * noise.eta
    )
    s = math.sqrt(2.0 * state_var)
    alpha_prime = np.sqrt(2.0 * arr) * noise.amplitude_decay
    out = 0.5 * (1.0 - 0.5 * (erf(lam / s) + erf((alpha_prime - lam) / s)))
    return _ret(out, n)
