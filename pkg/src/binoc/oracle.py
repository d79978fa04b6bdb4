"""Independent verification engines for the closed-form receiver results.

Everything here recomputes error probabilities by a route that shares as
little as possible with the closed forms it checks:

* a truncated number-basis representation with the optimal two-state
  measurement built from the eigenspaces of the density-matrix difference,
* brute-force phase-space quadrature of detection probabilities,
* Monte Carlo simulation of the receivers' outcome statistics, and
* a grid-plus-golden-section minimizer for verifying closed-form optima.

These back the test suite and the ``verify`` CLI command; none of them sit
on any hot path.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import expm

from .channel import NoiseParams, SingleModeState, evolve_single_mode, evolve_two_mode
from .channel import ChannelBudget
from .single_mode import DirectReceiverConfig

__all__ = [
    "FockState",
    "vacuum_state",
    "number_state",
    "coherent_state",
    "displaced_thermal_state",
    "twb_state",
    "displacement_operator",
    "helstrom_fock",
    "displaced_thermal_pmf",
    "QuadratureConvergenceError",
    "no_click_probability_quadrature",
    "DirectQuadrature",
    "direct_error_quadrature",
    "McEstimate",
    "mc_receiver",
    "GridMinResult",
    "grid_argmin",
]

_ZERO_EIGENVALUE = 1e-12  # |eigenvalue| below this counts as the degenerate subspace


@dataclass(frozen=True)
class FockState:
    """Density matrix in a truncated number basis.

    Validated on construction: Hermitian to 1e-12, positive semidefinite to
    -1e-10, trace at most one.  The truncation deficit 1 - trace is exposed
    so callers can judge whether the cutoff was large enough.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian to 1e-12")
        tr = float(m.trace().real)
        if tr > 1.0 + 1e-9:
            raise ValueError(f"trace {tr} exceeds one")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ValueError("density matrix has an eigenvalue below -1e-10")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace_deficit(self) -> float:
        """Probability mass lost to the truncation."""
        return 1.0 - float(self.matrix.trace().real)


def _ladder(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def displacement_operator(alpha: complex, dim: int) -> np.ndarray:
    """Truncated displacement matrix exp(alpha a^dag - alpha* a)."""
    a = _ladder(dim)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


def vacuum_state(dim: int) -> FockState:
    return number_state(0, dim)


def number_state(k: int, dim: int) -> FockState:
    if not 0 <= k < dim:
        raise ValueError(f"number state {k} does not fit in dimension {dim}")
    m = np.zeros((dim, dim), dtype=complex)
    m[k, k] = 1.0
    return FockState(m)


def coherent_state(alpha: float, dim: int) -> FockState:
    """Coherent state from its number-basis series (log-domain for large
    amplitudes)."""
    n = np.arange(dim)
    if alpha == 0.0:
        ket = np.zeros(dim)
        ket[0] = 1.0
    else:
        from scipy.special import gammaln

        ket = np.exp(
            -0.5 * alpha * alpha + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
        ) * np.sign(alpha) ** n
    return FockState(np.outer(ket, ket).astype(complex))


def displaced_thermal_state(alpha: float, thermal_mean: float, dim: int) -> FockState:
    """Displaced thermal state built from first principles: geometric
    thermal diagonal conjugated by the truncated displacement operator."""
    if thermal_mean < 0.0:
        raise ValueError("thermal_mean must be >= 0")
    n = np.arange(dim)
    if thermal_mean == 0.0:
        diag = np.zeros(dim)
        diag[0] = 1.0
    else:
        ratio = thermal_mean / (1.0 + thermal_mean)
        diag = ratio**n / (1.0 + thermal_mean)
    if alpha == 0.0:
        return FockState(np.diag(diag).astype(complex))
    d = displacement_operator(alpha, dim)
    return FockState(d @ np.diag(diag).astype(complex) @ d.conj().T)


def twb_state(lam: float, dim: int, displacement: float = 0.0) -> FockState:
    """Two-mode twin beam of parameter ``lam`` on a dim x dim joint basis,
    optionally displaced on the first mode."""
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"twin-beam parameter must lie in [0, 1), got {lam}")
    psi = np.zeros((dim, dim))
    psi[np.arange(dim), np.arange(dim)] = math.sqrt(1.0 - lam * lam) * lam ** np.arange(
        dim
    )
    if displacement != 0.0:
        psi = displacement_operator(displacement, dim).real @ psi
    vec = psi.reshape(-1)
    return FockState(np.outer(vec, vec).astype(complex))


def helstrom_fock(state0: FockState, state1: FockState) -> float:
    """Error probability of the optimal measurement discriminating two
    equiprobable states.

    Diagonalizes the difference of the density matrices and assigns each
    eigenvector to the hypothesis matching its eigenvalue sign; the
    degenerate (zero-eigenvalue) subspace is split half-half, matching the
    unit-step convention with step(0) = 1/2.
    """
    if state0.dim != state1.dim:
        raise ValueError(
            f"dimension mismatch: {state0.dim} vs {state1.dim}"
        )
    for s, name in ((state0, "state0"), (state1, "state1")):
        if s.trace_deficit > 1e-6:
            warnings.warn(
                f"{name} loses {s.trace_deficit:.2e} trace to truncation; "
                "the discrimination error may be off by a comparable amount",
                stacklevel=2,
            )
    w, v = np.linalg.eigh(state1.matrix - state0.matrix)
    weight1 = np.where(np.abs(w) < _ZERO_EIGENVALUE, 0.5, (w > 0).astype(float))
    # <v_k| rho |v_k> for every eigenvector at once
    diag0 = np.einsum("ij,ji->i", v.conj().T, state0.matrix @ v).real
    diag1 = np.einsum("ij,ji->i", v.conj().T, state1.matrix @ v).real
    p_infer1_given0 = float(np.sum(weight1 * diag0))
    p_infer0_given1 = float(np.sum((1.0 - weight1) * diag1))
    return 0.5 * (p_infer1_given0 + p_infer0_given1)


def displaced_thermal_pmf(amplitude: float, thermal_mean: float, cutoff: int) -> np.ndarray:
    """Photon-number distribution of a displaced thermal state.

    Evaluated by Fourier inversion of the closed-form generating function
    sum_n s^n p(n) = exp(-(1-s)|a|^2 / (1+(1-s)W)) / (1+(1-s)W) on the unit
    circle, staying clear of both the density-matrix route and the analytic
    polynomial forms.  Raises when the cutoff leaves visible tail mass.
    """
    if thermal_mean < 0.0:
        raise ValueError("thermal_mean must be >= 0")
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    k = np.arange(cutoff)
    s = np.exp(2j * np.pi * k / cutoff)
    g = np.exp(
        -(1.0 - s) * amplitude * amplitude / (1.0 + (1.0 - s) * thermal_mean)
    ) / (1.0 + (1.0 - s) * thermal_mean)
    p = np.fft.fft(g).real / cutoff
    # circular inversion folds any tail mass onto the top bins
    if p[-8:].sum() > 1e-10:
        raise ValueError(
            f"cutoff {cutoff} too small for amplitude {amplitude}, "
            f"thermal mean {thermal_mean}"
        )
    p = np.clip(p, 0.0, None)
    return p / p.sum()


class QuadratureConvergenceError(RuntimeError):
    """Grid refinement failed to stabilize the phase-space integral."""


def no_click_probability_quadrature(
    state: SingleModeState,
    reference: float,
    cfg: DirectReceiverConfig,
    eta: float,
    *,
    tol: float = 1e-8,
    max_refinements: int = 6,
) -> float:
    """No-click probability of the on/off receiver by brute-force 2D
    quadrature in phase space.

    Mixes the displaced thermal input with the coherent ``reference`` at the
    beam splitter (Gaussian mean/covariance propagation), then integrates
    the overlap of the outgoing signal-arm Wigner function with the Wigner
    function of the no-click element of the efficiency-eta detector.  The
    grid spans at least eight standard deviations and the step is halved
    until two successive estimates agree to ``tol``.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"detector efficiency must lie in (0, 1], got {eta}")
    c = math.sqrt(cfg.transmissivity)
    s = math.sqrt(1.0 - cfg.transmissivity)
    # beam splitter on means and (isotropic) quadrature variances
    mean_out = c * state.amplitude + s * reference
    var_out = (
        cfg.transmissivity * state.quadrature_variance
        + (1.0 - cfg.transmissivity) * 0.25
    )
    # no-click element is 1/eta times a thermal state of mean (1-eta)/eta
    var_povm = 0.25 * (2.0 * (1.0 - eta) / eta + 1.0)

    sd_out, sd_povm = math.sqrt(var_out), math.sqrt(var_povm)
    sd_max, sd_min = max(sd_out, sd_povm), min(sd_out, sd_povm)
    x_lo = min(0.0, mean_out) - 8.0 * sd_max
    x_hi = max(0.0, mean_out) + 8.0 * sd_max
    y_half = 8.0 * sd_max

    def integrate(step: float) -> float:
        x = np.arange(x_lo, x_hi + step, step)
        y = np.arange(-y_half, y_half + step, step)
        xx, yy = np.meshgrid(x, y, indexing="ij")
        w_out = np.exp(
            -0.5 * ((xx - mean_out) ** 2 + yy**2) / var_out
        ) / (2.0 * np.pi * var_out)
        w_povm = np.exp(-0.5 * (xx**2 + yy**2) / var_povm) / (
            2.0 * np.pi * var_povm * eta
        )
        # trace of an operator product = pi * overlap of the Wigner functions,
        # with d^2 zeta = dx dy in these coordinates
        return np.pi * float(
            np.trapezoid(np.trapezoid(w_out * w_povm, y, axis=1), x)
        )

    step = sd_min / 3.0
    prev = integrate(step)
    for _ in range(max_refinements):
        step /= 2.0
        cur = integrate(step)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise QuadratureConvergenceError(
        f"no-click quadrature did not stabilize to {tol} after "
        f"{max_refinements} refinements (last change {abs(cur - prev):.2e})"
    )


class DirectQuadrature(NamedTuple):
    """Quadrature-evaluated conditionals and average error of the on/off
    receiver."""

    infer_zero_given_alpha: float
    infer_alpha_given_zero: float
    error_probability: float


def direct_error_quadrature(
    n: float, cfg: DirectReceiverConfig, noise: NoiseParams, *, tol: float = 1e-8
) -> DirectQuadrature:
    """Full noisy on/off error from phase-space quadrature alone.

    Evolves both symbols through the channel, forms the noise-matched
    reference, and integrates the click statistics of each arm.
    """
    if n < 0.0:
        raise ValueError("channel energy must be >= 0")
    signal = evolve_single_mode(math.sqrt(2.0 * n), noise)
    vac = evolve_single_mode(0.0, noise)
    eta = noise.eta
    if cfg.transmissivity == 1.0:
        # tan(phi) = 0 makes the matched reference diverge while its effect
        # stays finite; fold the limiting displacement into the inputs.
        nulled = SingleModeState(0.0, signal.thermal_mean)
        lit = SingleModeState(-signal.amplitude, vac.thermal_mean)
        no_click_sig = no_click_probability_quadrature(nulled, 0.0, cfg, eta, tol=tol)
        no_click_vac = no_click_probability_quadrature(lit, 0.0, cfg, eta, tol=tol)
    else:
        reference = -signal.amplitude / math.tan(cfg.mixing_angle)
        no_click_sig = no_click_probability_quadrature(signal, reference, cfg, eta, tol=tol)
        no_click_vac = no_click_probability_quadrature(vac, reference, cfg, eta, tol=tol)
    infer_zero = 1.0 - no_click_sig
    infer_alpha = no_click_vac
    return DirectQuadrature(infer_zero, infer_alpha, 0.5 * (infer_zero + infer_alpha))


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo error-rate estimate with its binomial standard error."""

    mean: float
    std_err: float
    shots: int
    seed: int


_CHUNK = 1 << 20


def _pmf_cutoff(mean_photons: float) -> int:
    need = mean_photons + 12.0 * math.sqrt(mean_photons + 1.0) + 16.0
    cutoff = 64
    while cutoff < need:
        cutoff *= 2
    return cutoff


def mc_receiver(
    receiver: str,
    *,
    n: float,
    noise: NoiseParams | None = None,
    transmissivity: float = 0.99,
    beta: float | None = None,
    shots: int,
    seed: int,
) -> McEstimate:
    """Simulate a receiver shot by shot and return its empirical error rate.

    Symbols are equiprobable; each receiver's outcome statistics are sampled
    from its physical pieces (channel-evolved state plus detector model)
    and pushed through the module's decision rule:

    * ``direct``: photon number of the beam-splitter output arm, each photon
      thinned with probability eta, click = any survivor;
    * ``homodyne``: quadrature draw around the decayed amplitude plus the
      detector's Gaussian smear, threshold at half the decayed amplitude;
    * ``heterodyne``: complex outcome around the decayed amplitude with the
      evolved twin-beam variance plus detector smear, thresholded on its
      real part (``beta`` = None uses the optimal entanglement fraction).

    Deterministic for a given ``seed``: shots are drawn in fixed-size blocks
    from a single PCG64 stream, independent of platform.
    """
    if shots < 1000:
        raise ValueError(f"at least 1000 shots required, got {shots}")
    if n < 0.0:
        raise ValueError("channel energy must be >= 0")
    noise = noise or NoiseParams.ideal()
    rng = np.random.default_rng(seed)
    errors = 0

    if receiver == "direct":
        cfg = DirectReceiverConfig(transmissivity)
        signal = evolve_single_mode(math.sqrt(2.0 * n), noise)
        w_out = cfg.transmissivity * signal.thermal_mean
        c = math.sqrt(cfg.transmissivity)
        # matched reference nulls the displaced symbol: arm means are
        # c*(mu' - alpha') for mu' in {alpha', 0}
        means = (-c * signal.amplitude, 0.0)  # indexed by symbol
        pmfs = []
        for mean in means:
            cutoff = _pmf_cutoff(mean * mean + w_out)
            pmfs.append(displaced_thermal_pmf(mean, w_out, cutoff))
        cdfs = [np.cumsum(p) for p in pmfs]
        done = 0
        while done < shots:
            k = min(_CHUNK, shots - done)
            sym = rng.integers(0, 2, size=k)
            u = rng.random(k)
            photons = np.empty(k, dtype=np.int64)
            for sval in (0, 1):
                mask = sym == sval
                photons[mask] = np.searchsorted(cdfs[sval], u[mask])
            survivors = rng.binomial(photons, noise.eta)
            infer = np.where(survivors > 0, 0, 1)
            errors += int(np.count_nonzero(infer != sym))
            done += k
    elif receiver == "homodyne":
        state = evolve_single_mode(math.sqrt(2.0 * n), noise)
        sd_state = math.sqrt(state.quadrature_variance)
        sd_det = math.sqrt((1.0 - noise.eta) / (4.0 * noise.eta))
        thresh = 0.5 * state.amplitude
        done = 0
        while done < shots:
            k = min(_CHUNK, shots - done)
            sym = rng.integers(0, 2, size=k)
            x = rng.normal(sym * state.amplitude, sd_state)
            if sd_det > 0.0:
                x += rng.normal(0.0, sd_det, size=k)
            errors += int(np.count_nonzero((x > thresh) != sym))
            done += k
    elif receiver == "heterodyne":
        if n <= 0.0:
            raise ValueError("heterodyne simulation needs n > 0")
        if beta is None:
            from .entangled import beta_opt_full

            beta = beta_opt_full(n, noise)
        evolved = evolve_two_mode(ChannelBudget(n, beta), 1, noise)
        sd_state = math.sqrt(2.0 * evolved.sigma_minus_sq)
        sd_det = math.sqrt(0.5 * (1.0 - noise.eta) / noise.eta)
        alpha_prime = evolved.displacement
        thresh = 0.5 * alpha_prime
        done = 0
        while done < shots:
            k = min(_CHUNK, shots - done)
            sym = rng.integers(0, 2, size=k)
            z_re = rng.normal(sym * alpha_prime, sd_state)
            z_im = rng.normal(0.0, sd_state, size=k)
            if sd_det > 0.0:
                z_re += rng.normal(0.0, sd_det, size=k)
                z_im += rng.normal(0.0, sd_det, size=k)
            # the decision rule reads only the real part of the outcome
            errors += int(np.count_nonzero((z_re > thresh) != sym))
            done += k
    else:
        raise ValueError(
            f"unknown receiver {receiver!r}; expected direct, homodyne or heterodyne"
        )

    mean = errors / shots
    return McEstimate(
        mean=mean,
        std_err=math.sqrt(mean * (1.0 - mean) / shots),
        shots=shots,
        seed=seed,
    )


@dataclass(frozen=True)
class GridMinResult:
    """Result of the coarse-grid + golden-section minimizer.

    ``degenerate`` flags a second grid minimum, well separated from the
    reported one, whose value lies within twice the tolerance of it.
    """

    argmin: float
    minimum: float
    degenerate: bool


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def grid_argmin(
    fn: Callable[[float], float],
    bounds: tuple[float, float],
    tolerance: float,
) -> GridMinResult:
    """Minimize a scalar function by a 1000-point coarse grid followed by
    golden-section refinement of the best bracket."""
    lo, hi = bounds
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"bounds must be finite and increasing, got {bounds}")
    if not tolerance > 0.0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    xs = np.linspace(lo, hi, 1001)
    ys = np.array([fn(float(x)) for x in xs])
    i_best = int(np.argmin(ys))

    a = float(xs[max(i_best - 1, 0)])
    b = float(xs[min(i_best + 1, len(xs) - 1)])
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tolerance:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    argmin = 0.5 * (a + b)
    minimum = fn(argmin)

    separation = (hi - lo) / 100.0
    degenerate = bool(
        np.any((np.abs(xs - argmin) > separation) & (ys <= minimum + 2.0 * tolerance))
    )
    return GridMinResult(argmin=argmin, minimum=minimum, degenerate=degenerate)
