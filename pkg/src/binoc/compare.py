"""Receiver comparison functionals, crossover roots and regime tables.

The three receivers are compared through relative functionals of the form
1 - (one receiver's error)/(another's): positive values mean the numerator
receiver wins.  Their roots in the channel energy N are the crossover
thresholds that organize the working regimes; depending on the noise level
a comparison function can have zero, one or two roots, so the finder uses a
dense sign-change scan followed by bisection rather than anything
derivative-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import NoiseParams
from .entangled import beta_opt_full, re_noisy
from .single_mode import DirectReceiverConfig, he_noisy, ke_noisy

__all__ = [
    "helstrom_pe",
    "ComparisonParams",
    "a_e",
    "b_e",
    "c_e",
    "Regime",
    "CrossoverReport",
    "find_crossovers",
    "receiver_regime_table",
    "asymptotic_floor",
    "PAIRS",
]

#: Receiver-pair labels understood by :func:`find_crossovers`.
PAIRS = ("hom-vs-direct", "het-vs-direct", "het-vs-hom")


def helstrom_pe(n):
    """Minimum error probability achievable by any measurement on the
    single-mode alphabet, (1 - sqrt(1 - e^{-2N})) / 2.

    Evaluated as q / (2 (1 + sqrt(1 - q))) with q = e^{-2N}, which is exact
    at N = 0 and immune to cancellation at large N.
    """
    arr = np.asarray(n, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("channel energy must be >= 0")
    q = np.exp(-2.0 * arr)
    out = q / (2.0 * (1.0 + np.sqrt(1.0 - q)))
    return float(out) if np.ndim(n) == 0 else out


@dataclass(frozen=True)
class ComparisonParams:
    """Per-receiver efficiencies plus the common propagation noise.

    Defaults are the realistic working point used throughout the regime
    tables: on/off at 0.95, quadrature receivers at 0.85, nulling beam
    splitter at 0.99, no propagation noise.
    """

    eta_ken: float = 0.95
    eta_hom: float = 0.85
    eta_het: float = 0.85
    gamma_t: float = 0.0
    m_thermal: float = 0.0
    transmissivity: float = 0.99

    def __post_init__(self) -> None:
        for name in ("eta_ken", "eta_hom", "eta_het"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {v}")
        if self.gamma_t < 0.0:
            raise ValueError(f"gamma_t must be >= 0, got {self.gamma_t}")
        if self.m_thermal < 0.0:
            raise ValueError(f"m_thermal must be >= 0, got {self.m_thermal}")
        if not 0.0 < self.transmissivity <= 1.0:
            raise ValueError(
                f"transmissivity must lie in (0, 1], got {self.transmissivity}"
            )

    def direct_noise(self) -> NoiseParams:
        return NoiseParams(self.eta_ken, self.gamma_t, self.m_thermal)

    def homodyne_noise(self) -> NoiseParams:
        return NoiseParams(self.eta_hom, self.gamma_t, self.m_thermal)

    def heterodyne_noise(self) -> NoiseParams:
        return NoiseParams(self.eta_het, self.gamma_t, self.m_thermal)

    def direct_config(self) -> DirectReceiverConfig:
        return DirectReceiverConfig(self.transmissivity)


def a_e(n, eta_ken, eta_hom, gamma_t=0.0, m_thermal=0.0, transmissivity=0.99):
    """Homodyne-vs-direct comparison 1 - He/Ke; positive where homodyne wins.

    The direct-detection error is strictly positive, so the ratio is always
    defined.
    """
    he = he_noisy(n, NoiseParams(eta_hom, gamma_t, m_thermal))
    ke = ke_noisy(
        n, DirectReceiverConfig(transmissivity), NoiseParams(eta_ken, gamma_t, m_thermal)
    )
    return 1.0 - np.asarray(he) / np.asarray(ke) if np.ndim(n) else 1.0 - he / ke


def b_e(n, eta_ken, eta_het, gamma_t=0.0, m_thermal=0.0, transmissivity=0.99):
    """Heterodyne-vs-direct comparison 1 - Re/Ke with the heterodyne arm at
    its optimal entanglement fraction; positive where heterodyne wins."""
    noise_het = NoiseParams(eta_het, gamma_t, m_thermal)
    re = re_noisy(n, beta_opt_full(n, noise_het), noise_het)
    ke = ke_noisy(
        n, DirectReceiverConfig(transmissivity), NoiseParams(eta_ken, gamma_t, m_thermal)
    )
    return 1.0 - np.asarray(re) / np.asarray(ke) if np.ndim(n) else 1.0 - re / ke


def c_e(n, eta, gamma_t=0.0, m_thermal=0.0):
    """Heterodyne-vs-homodyne comparison 1 - Re/He at one common efficiency,
    heterodyne at its optimal entanglement fraction; positive where the
    entangled channel wins."""
    noise = NoiseParams(eta, gamma_t, m_thermal)
    re = re_noisy(n, beta_opt_full(n, noise), noise)
    he = he_noisy(n, noise)
    return 1.0 - np.asarray(re) / np.asarray(he) if np.ndim(n) else 1.0 - re / he


@dataclass(frozen=True)
class Regime:
    """Half-open energy interval (n_lo, n_hi] with its winning receiver."""

    n_lo: float
    n_hi: float
    receiver: str


@dataclass(frozen=True)
class CrossoverReport:
    """Thresholds and best-receiver regimes on (0, n_max].

    ``thresholds`` are strictly increasing; ``regimes`` partition the
    scanned interval and adjacent regimes name different receivers.
    ``boundary_uncertain`` flags thresholds within one scan step of either
    end of the interval, where the dense scan cannot exclude a companion
    root outside.
    """

    pair: str
    thresholds: tuple[float, ...]
    regimes: tuple[Regime, ...]
    boundary_uncertain: tuple[bool, ...] = field(default=())


def _scan_grid(n_max: float) -> np.ndarray:
    """Dense scan grid on (0, n_max]: base step 1e-3 n_max, refined tenfold
    on the lowest decade where small crossover roots can hide."""
    step = 1e-3 * n_max
    fine = np.arange(step / 10.0, 0.1 * n_max, step / 10.0)
    coarse = np.arange(0.1 * n_max, n_max + step / 2.0, step)
    return np.concatenate([fine, coarse])


def _bisect(fn, lo: float, hi: float, f_lo: float, tol: float = 1e-6) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) != (f_mid < 0.0):
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def _pair_function(pair: str, params: ComparisonParams):
    if pair == "hom-vs-direct":
        fn = lambda n: a_e(
            n,
            params.eta_ken,
            params.eta_hom,
            params.gamma_t,
            params.m_thermal,
            params.transmissivity,
        )
        return fn, "homodyne", "direct"
    if pair == "het-vs-direct":
        fn = lambda n: b_e(
            n,
            params.eta_ken,
            params.eta_het,
            params.gamma_t,
            params.m_thermal,
            params.transmissivity,
        )
        return fn, "heterodyne", "direct"
    if pair == "het-vs-hom":
        if params.eta_hom != params.eta_het:
            raise ValueError(
                "het-vs-hom compares at one common efficiency; eta_hom and "
                f"eta_het differ ({params.eta_hom} vs {params.eta_het})"
            )
        fn = lambda n: c_e(n, params.eta_het, params.gamma_t, params.m_thermal)
        return fn, "heterodyne", "homodyne"
    raise ValueError(f"unknown receiver pair {pair!r}; expected one of {PAIRS}")


def find_crossovers(
    pair: str, params: ComparisonParams, n_max: float, *, tol: float = 1e-6
) -> CrossoverReport:
    """Locate every sign change of a pairwise comparison function on
    (0, n_max] and label the resulting regimes.

    Returns zero, one or two (occasionally more) thresholds; "no crossover"
    is a successful outcome with a single regime.  Roots within one scan
    step of the interval ends are flagged boundary-uncertain.
    """
    if not n_max > 0.0:
        raise ValueError(f"n_max must be > 0, got {n_max}")
    fn, pos_label, neg_label = _pair_function(pair, params)
    grid = _scan_grid(n_max)
    vals = np.asarray(fn(grid))

    roots: list[float] = []
    sign = np.sign(vals)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        roots.append(float(_bisect(fn, float(grid[i]), float(grid[i + 1]), float(vals[i]), tol)))
    for i in np.nonzero(sign == 0)[0]:
        roots.append(float(grid[i]))
    roots.sort()

    step = 1e-3 * n_max
    uncertain = tuple(bool(r < step or r > n_max - step) for r in roots)

    bounds = [0.0, *roots, n_max]
    regimes = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        mid = 0.5 * (lo + hi)
        label = pos_label if fn(mid) > 0.0 else neg_label
        regimes.append(Regime(float(lo), float(hi), label))
    return CrossoverReport(pair, tuple(roots), tuple(regimes), uncertain)


def receiver_regime_table(
    params: ComparisonParams, n_max: float, *, tol: float = 1e-6
) -> CrossoverReport:
    """Three-way best-receiver partition of (0, n_max].

    Scans all three error probabilities on a dense grid, finds where the
    argmin receiver changes, and refines each boundary by bisection on the
    difference of the two receivers that swap there.
    """
    if not n_max > 0.0:
        raise ValueError(f"n_max must be > 0, got {n_max}")
    labels = ("direct", "homodyne", "heterodyne")
    noise_het = params.heterodyne_noise()

    def errors(n):
        ke = ke_noisy(n, params.direct_config(), params.direct_noise())
        he = he_noisy(n, params.homodyne_noise())
        re = re_noisy(n, beta_opt_full(n, noise_het), noise_het)
        return np.stack([np.asarray(ke), np.asarray(he), np.asarray(re)])

    grid = _scan_grid(n_max)
    best = np.argmin(errors(grid), axis=0)

    thresholds: list[float] = []
    regime_labels = [labels[best[0]]]
    for i in np.nonzero(best[:-1] != best[1:])[0]:
        a, b = best[i], best[i + 1]

        def diff(n, a=a, b=b):
            e = errors(n)
            return float(e[a] - e[b])

        thresholds.append(float(_bisect(diff, float(grid[i]), float(grid[i + 1]), diff(float(grid[i])), tol)))
        regime_labels.append(labels[b])

    step = 1e-3 * n_max
    uncertain = tuple(bool(r < step or r > n_max - step) for r in thresholds)
    bounds = [0.0, *thresholds, n_max]
    regimes = tuple(
        Regime(float(lo), float(hi), lab)
        for lo, hi, lab in zip(bounds[:-1], bounds[1:], regime_labels)
    )
    return CrossoverReport("best-of-three", tuple(thresholds), regimes, uncertain)


def asymptotic_floor(receiver: str, params: ComparisonParams) -> float:
    """Large-energy limit of a receiver's error probability.

    Direct detection saturates at the thermal click floor
    sigma / (2 (1 + sigma)) with sigma = eta M tau (1 - e^{-gamma_t}); both
    quadrature receivers decay to zero for any noise level.
    """
    if receiver == "direct":
        sigma = (
            params.eta_ken
            * params.m_thermal
            * params.transmissivity
            * -math.expm1(-params.gamma_t)
        )
        return sigma / (2.0 * (1.0 + sigma))
    if receiver in ("homodyne", "heterodyne"):
        return 0.0
    raise ValueError(f"unknown receiver {receiver!r}")
