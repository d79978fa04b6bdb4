"""Command-line front end: point evaluations, parameter sweeps, crossover
searches and verification runs.

Output is CSV (default) or JSON.  CSV uses a header row, comma separators
and floats rendered with nine significant digits in scientific notation so
that reruns of the same command line are byte-identical.  JSON mirrors the
CSV rows as an array of objects plus a ``meta`` object carrying every fixed
parameter and the tool version.

Exit codes: 0 on success, 1 when a verification target misses its
tolerance, 2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .channel import ChannelBudget, NoiseParams, evolve_single_mode, evolve_two_mode
from .compare import ComparisonParams, find_crossovers, helstrom_pe, receiver_regime_table
from .entangled import (
    beta_opt_full,
    heterodyne_variance_sq,
    qe_ideal,
    re_noisy,
    re_with_threshold,
    survival_fraction,
    survival_fraction_printed,
)
from .oracle import (
    coherent_state,
    direct_error_quadrature,
    grid_argmin,
    helstrom_fock,
    mc_receiver,
    vacuum_state,
)
from .single_mode import (
    DEFAULT_TRANSMISSIVITY,
    DirectReceiverConfig,
    he_noisy,
    he_with_threshold,
    ke_conditionals,
    ke_noisy,
)

SEED_ENV_VAR = "BINOC_SEED"

RECEIVERS = ("direct", "homodyne", "heterodyne")
SWEEP_VARIABLES = ("n", "eta", "gamma-t", "m", "beta")
QUANTITIES = ("ke", "he", "re", "qe", "pe", "ae", "be", "ce", "beta-opt", "beta-s", "nth")
VERIFY_TARGETS = ("helstrom", "direct", "homodyne", "heterodyne", "beta-opt", "separability")


def _fmt(value) -> str:
    """Nine significant digits, scientific notation, for CSV cells."""
    if value is None:
        return "nan"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.8e}"


def _emit(args, header: list[str], rows: list[dict], meta: dict) -> None:
    if args.format == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(row.get(col)) for col in header))
        text = "\n".join(lines) + "\n"
    else:
        clean_rows = [
            {k: (None if _is_nan(v) else v) for k, v in row.items()} for row in rows
        ]
        text = json.dumps(
            {"meta": meta, "rows": clean_rows}, indent=2, default=_json_default
        ) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _is_nan(v) -> bool:
    return isinstance(v, float) and math.isnan(v)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get(SEED_ENV_VAR, "0"))


@dataclass
class Etas:
    ken: float
    hom: float
    het: float


def _resolve_etas(args) -> Etas:
    base = args.eta if args.eta is not None else 1.0
    return Etas(
        ken=args.eta_ken if args.eta_ken is not None else base,
        hom=args.eta_hom if args.eta_hom is not None else base,
        het=args.eta_het if args.eta_het is not None else base,
    )


def _parse_m_list(raw: str) -> list[float]:
    try:
        values = [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"cannot parse --m value {raw!r}: {exc}") from None
    if not values:
        raise ValueError("--m needs at least one value")
    for v in values:
        if v < 0.0:
            raise ValueError(f"thermal occupation must be >= 0, got {v}")
    return values


def _beta_value(raw: str):
    if raw == "auto":
        return "auto"
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"--beta expects a number or 'auto', got {raw!r}") from None


def _threshold_value(raw: str):
    if raw == "auto":
        return "auto"
    try:
        return float(raw)
    except ValueError:
        raise ValueError(
            f"--lambda-threshold expects a number or 'auto', got {raw!r}"
        ) from None


def _add_common_params(p: argparse.ArgumentParser, *, m_list: bool = False) -> None:
    p.add_argument("--n", type=float, default=None, help="channel energy (mean photons per use)")
    p.add_argument("--eta", type=float, default=None, help="detector efficiency for every receiver (default 1)")
    p.add_argument("--eta-ken", type=float, default=None, help="on/off detector efficiency (overrides --eta)")
    p.add_argument("--eta-hom", type=float, default=None, help="homodyne detector efficiency (overrides --eta)")
    p.add_argument("--eta-het", type=float, default=None, help="heterodyne detector efficiency (overrides --eta)")
    p.add_argument("--gamma-t", type=float, default=0.0, help="dimensionless damping product (default 0)")
    if m_list:
        p.add_argument("--m", type=str, default="0", help="mean thermal photons; comma list makes one column per value")
    else:
        p.add_argument("--m", type=float, default=0.0, help="mean thermal photons (default 0)")
    p.add_argument("--transmissivity", type=float, default=DEFAULT_TRANSMISSIVITY,
                   help=f"on/off beam-splitter transmissivity (default {DEFAULT_TRANSMISSIVITY})")
    p.add_argument("--beta", type=_beta_value, default="auto",
                   help="entanglement fraction, or 'auto' for the optimal one (default auto)")
    p.add_argument("--lambda-threshold", type=_threshold_value, default="auto", dest="lambda_threshold",
                   help="decision threshold, or 'auto' for the optimal one (default auto)")
    p.add_argument("--as-printed", action="store_true",
                   help="also report the survival fraction in its as-printed variant")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=str, default=None, help="write output to this path instead of stdout")
    p.add_argument("--seed", type=int, default=None,
                   help=f"RNG seed for stochastic oracles (default ${SEED_ENV_VAR} or 0)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binoc",
        description="Error probabilities for binary optical communication over "
        "noisy single-mode and twin-beam entangled Gaussian channels.",
    )
    parser.add_argument("--version", action="version", version=f"binoc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_pe = sub.add_parser("pe", help="error probability of one receiver at a point")
    p_pe.add_argument("--receiver", choices=RECEIVERS, required=True)
    _add_common_params(p_pe)
    p_pe.set_defaults(func=_cmd_pe)

    p_sweep = sub.add_parser("sweep", help="sweep one variable and emit a CSV/JSON table")
    p_sweep.add_argument("--variable", choices=SWEEP_VARIABLES, required=True)
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--scale", choices=("linear", "log"), default="linear")
    p_sweep.add_argument("--quantities", type=str, required=True,
                         help="comma list from: " + ", ".join(QUANTITIES))
    p_sweep.add_argument("--n-max", type=float, default=30.0,
                         help="scan ceiling for the nth quantity (default 30)")
    _add_common_params(p_sweep, m_list=True)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_thr = sub.add_parser("threshold", help="crossover thresholds and best-receiver regimes")
    p_thr.add_argument("--pair", choices=("hom-vs-direct", "het-vs-direct", "het-vs-hom", "best-of-three"),
                       required=True)
    p_thr.add_argument("--n-max", type=float, default=10.0)
    _add_common_params(p_thr)
    p_thr.set_defaults(func=_cmd_threshold)

    p_ver = sub.add_parser("verify", help="cross-check a closed form against its independent oracle")
    p_ver.add_argument("--target", choices=VERIFY_TARGETS, required=True)
    p_ver.add_argument("--dim", type=int, default=64, help="Fock truncation dimension (default 64)")
    p_ver.add_argument("--shots", type=int, default=1_000_000,
                       help="Monte Carlo sample count (default 1e6)")
    _add_common_params(p_ver)
    p_ver.set_defaults(func=_cmd_verify)
    return parser


# ---------------------------------------------------------------------------
# pe


def _require_n(args) -> float:
    if args.n is None:
        raise ValueError("--n is required for this command")
    if args.n < 0.0:
        raise ValueError("channel energy must be >= 0")
    return args.n


def _cmd_pe(args) -> int:
    n = _require_n(args)
    etas = _resolve_etas(args)
    receiver = args.receiver
    meta = {
        "version": __version__,
        "command": "pe",
        "receiver": receiver,
        "gamma_t": args.gamma_t,
        "m": args.m,
        "transmissivity": args.transmissivity,
    }

    if receiver == "direct":
        noise = NoiseParams(etas.ken, args.gamma_t, args.m)
        cfg = DirectReceiverConfig(args.transmissivity)
        state = evolve_single_mode(math.sqrt(2.0 * n), noise)
        cond = ke_conditionals(n, cfg, noise)
        row = {
            "receiver": receiver,
            "n": n,
            "eta": etas.ken,
            "gamma_t": args.gamma_t,
            "m": args.m,
            "transmissivity": args.transmissivity,
            "alpha_prime": state.amplitude,
            "m_prime": state.thermal_mean,
            "k_infer_zero_given_alpha": cond.infer_zero_given_alpha,
            "k_infer_alpha_given_zero": cond.infer_alpha_given_zero,
            "pe": ke_noisy(n, cfg, noise),
        }
    elif receiver == "homodyne":
        noise = NoiseParams(etas.hom, args.gamma_t, args.m)
        state = evolve_single_mode(math.sqrt(2.0 * n), noise)
        if args.lambda_threshold == "auto":
            lam = 0.5 * state.amplitude
            pe = he_noisy(n, noise)
        else:
            lam = args.lambda_threshold
            pe = he_with_threshold(n, noise, lam)
        variance = 0.25 + 0.5 * state.thermal_mean + (1.0 - noise.eta) / (4.0 * noise.eta)
        row = {
            "receiver": receiver,
            "n": n,
            "eta": etas.hom,
            "gamma_t": args.gamma_t,
            "m": args.m,
            "alpha_prime": state.amplitude,
            "m_prime": state.thermal_mean,
            "outcome_variance": variance,
            "lambda_used": lam,
            "pe": pe,
        }
    else:
        noise = NoiseParams(etas.het, args.gamma_t, args.m)
        if args.beta == "auto":
            beta = beta_opt_full(n, noise) if n > 0.0 else 0.0
        else:
            beta = args.beta
        alpha_prime = math.sqrt(2.0 * n * (1.0 - beta)) * noise.amplitude_decay
        delta_sq = heterodyne_variance_sq(beta * n, noise)
        if args.lambda_threshold == "auto":
            lam = 0.5 * alpha_prime
            pe = re_noisy(n, beta, noise)
        else:
            lam = args.lambda_threshold
            pe = re_with_threshold(n, beta, noise, lam)
        row = {
            "receiver": receiver,
            "n": n,
            "eta": etas.het,
            "gamma_t": args.gamma_t,
            "m": args.m,
            "beta_used": beta,
            "alpha_prime": alpha_prime,
            "delta_sq": delta_sq,
            "lambda_used": lam,
            "pe": pe,
        }
        if n > 0.0:
            evolved = evolve_two_mode(ChannelBudget(n, beta), 0, noise)
            row["sigma_minus_sq"] = evolved.sigma_minus_sq
            beta_s = survival_fraction(n, noise)
            row["beta_s"] = math.nan if beta_s is None else beta_s
            if args.as_printed:
                row["beta_s_printed"] = survival_fraction_printed(n, noise)
    _emit(args, list(row.keys()), [row], meta)
    return 0


# ---------------------------------------------------------------------------
# sweep


def _sweep_grid(args) -> np.ndarray:
    if not args.start < args.stop:
        raise ValueError(f"--start must be < --stop, got {args.start} >= {args.stop}")
    if args.points < 2:
        raise ValueError(f"--points must be >= 2, got {args.points}")
    if args.scale == "log":
        if args.start <= 0.0:
            raise ValueError("log scale requires --start > 0")
        return np.geomspace(args.start, args.stop, args.points)
    return np.linspace(args.start, args.stop, args.points)


def _cmd_sweep(args) -> int:
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    if not quantities:
        raise ValueError("--quantities needs at least one entry")
    for q in quantities:
        if q not in QUANTITIES:
            raise ValueError(f"unknown quantity {q!r}; expected one of {', '.join(QUANTITIES)}")
    variable = args.variable
    m_values = _parse_m_list(args.m)
    if variable == "m" and len(m_values) > 1:
        raise ValueError("--m cannot carry a list when m is the swept variable")
    grid = _sweep_grid(args)
    etas = _resolve_etas(args)
    if variable == "eta" and (args.eta is not None or args.eta_ken is not None
                              or args.eta_hom is not None or args.eta_het is not None):
        raise ValueError("per-receiver efficiencies conflict with sweeping eta")
    if variable == "beta" and args.beta != "auto":
        raise ValueError("--beta conflicts with sweeping beta")

    m_dependent = {"ke", "he", "re", "ae", "be", "ce", "beta-opt", "beta-s", "nth"}
    multi_m = len(m_values) > 1

    def column_name(q: str, m: float) -> str:
        if multi_m and q in m_dependent:
            return f"{q}[m={m:g}]"
        return q

    var_column = variable.replace("-", "_")
    header = [var_column]
    for q in quantities:
        if multi_m and q in m_dependent:
            header.extend(column_name(q, m) for m in m_values)
        else:
            header.append(q)
        if q == "beta-s" and args.as_printed:
            if multi_m:
                header.extend(f"beta-s-printed[m={m:g}]" for m in m_values)
            else:
                header.append("beta-s-printed")

    def evaluate(q: str, x: float, m: float):
        n = args.n
        gamma_t = args.gamma_t
        eta_ken, eta_hom, eta_het = etas.ken, etas.hom, etas.het
        beta = args.beta
        if variable == "n":
            n = x
        elif variable == "eta":
            eta_ken = eta_hom = eta_het = x
        elif variable == "gamma-t":
            gamma_t = x
        elif variable == "m":
            m = x
        elif variable == "beta":
            beta = x
        if q in ("ke", "he", "re", "qe", "pe", "ae", "be", "ce") and n is None:
            raise ValueError(f"quantity {q!r} needs --n when n is not the swept variable")
        cfg = DirectReceiverConfig(args.transmissivity)
        if q == "ke":
            return ke_noisy(n, cfg, NoiseParams(eta_ken, gamma_t, m))
        if q == "he":
            return he_noisy(n, NoiseParams(eta_hom, gamma_t, m))
        if q == "re":
            noise = NoiseParams(eta_het, gamma_t, m)
            b = beta_opt_full(n, noise) if beta == "auto" else beta
            return re_noisy(n, b, noise)
        if q == "qe":
            if beta == "auto":
                b = max((n - 1.0) / (2.0 * n), 0.0) if n > 0.0 else 0.0
            else:
                b = beta
            return qe_ideal(n, b)
        if q == "pe":
            return helstrom_pe(n)
        if q == "ae":
            from .compare import a_e

            return a_e(n, eta_ken, eta_hom, gamma_t, m, args.transmissivity)
        if q == "be":
            from .compare import b_e

            return b_e(n, eta_ken, eta_het, gamma_t, m, args.transmissivity)
        if q == "ce":
            from .compare import c_e

            return c_e(n, eta_het, gamma_t, m)
        if q == "beta-opt":
            if n is None or n <= 0.0:
                raise ValueError("beta-opt needs --n > 0 when n is not the swept variable")
            return beta_opt_full(n, NoiseParams(eta_het, gamma_t, m))
        if q == "beta-s":
            if n is None or n <= 0.0:
                raise ValueError("beta-s needs --n > 0 when n is not the swept variable")
            bs = survival_fraction(n, NoiseParams(eta_het, gamma_t, m))
            return math.nan if bs is None else bs
        if q == "beta-s-printed":
            return survival_fraction_printed(n, NoiseParams(eta_het, gamma_t, m))
        if q == "nth":
            params = ComparisonParams(
                eta_ken=eta_ken, eta_hom=eta_het, eta_het=eta_het,
                gamma_t=gamma_t, m_thermal=m, transmissivity=args.transmissivity,
            )
            report = find_crossovers("het-vs-hom", params, args.n_max)
            return float(report.thresholds[-1]) if report.thresholds else math.nan
        raise ValueError(f"unknown quantity {q!r}")

    rows = []
    for x in grid:
        row = {var_column: float(x)}
        for q in quantities:
            targets = m_values if (multi_m and q in m_dependent) else [m_values[0]]
            for m in targets:
                row[column_name(q, m)] = evaluate(q, float(x), m)
            if q == "beta-s" and args.as_printed:
                for m in targets:
                    name = f"beta-s-printed[m={m:g}]" if multi_m else "beta-s-printed"
                    row[name] = evaluate("beta-s-printed", float(x), m)
        rows.append(row)

    meta = {
        "version": __version__,
        "command": "sweep",
        "variable": var_column,
        "scale": args.scale,
        "points": args.points,
        "start": args.start,
        "stop": args.stop,
        "quantities": quantities,
        "n": args.n,
        "eta_ken": etas.ken,
        "eta_hom": etas.hom,
        "eta_het": etas.het,
        "gamma_t": args.gamma_t,
        "m": m_values if multi_m else m_values[0],
        "transmissivity": args.transmissivity,
        "beta": args.beta,
        "n_max": args.n_max,
    }
    _emit(args, header, rows, meta)
    return 0


# ---------------------------------------------------------------------------
# threshold


def _cmd_threshold(args) -> int:
    if not args.n_max > 0.0:
        raise ValueError(f"--n-max must be > 0, got {args.n_max}")
    etas = _resolve_etas(args)
    params = ComparisonParams(
        eta_ken=etas.ken,
        eta_hom=etas.hom,
        eta_het=etas.het,
        gamma_t=args.gamma_t,
        m_thermal=args.m,
        transmissivity=args.transmissivity,
    )
    if args.pair == "best-of-three":
        report = receiver_regime_table(params, args.n_max)
    else:
        report = find_crossovers(args.pair, params, args.n_max)

    if not report.thresholds:
        print(f"no crossover on (0, {args.n_max:g}]", file=sys.stderr)

    meta = {
        "version": __version__,
        "command": "threshold",
        "pair": args.pair,
        "n_max": args.n_max,
        "eta_ken": etas.ken,
        "eta_hom": etas.hom,
        "eta_het": etas.het,
        "gamma_t": args.gamma_t,
        "m": args.m,
        "transmissivity": args.transmissivity,
        "thresholds": [float(t) for t in report.thresholds],
        "boundary_uncertain": list(report.boundary_uncertain),
        "note": "no crossover" if not report.thresholds else "",
    }
    rows = [
        {"n_lo": r.n_lo, "n_hi": r.n_hi, "best_receiver": r.receiver}
        for r in report.regimes
    ]
    _emit(args, ["n_lo", "n_hi", "best_receiver"], rows, meta)
    return 0


# ---------------------------------------------------------------------------
# verify


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    etas = _resolve_etas(args)
    target = args.target
    lines: list[str] = []
    checks: list[dict] = []

    def record(name, closed, oracle, tolerance, passed):
        checks.append({
            "check": name,
            "closed_form": closed,
            "oracle": oracle,
            "discrepancy": abs(closed - oracle),
            "tolerance": tolerance,
            "passed": bool(passed),
        })
        lines.append(
            f"{name}: closed-form {closed:.12e}  oracle {oracle:.12e}  "
            f"|diff| {abs(closed - oracle):.3e}  tol {tolerance:g}  "
            f"{'PASS' if passed else 'FAIL'}"
        )

    if target == "helstrom":
        n = _require_n(args)
        closed = helstrom_pe(n)
        oracle = helstrom_fock(
            vacuum_state(args.dim), coherent_state(math.sqrt(2.0 * n), args.dim)
        )
        record("helstrom", closed, oracle, 1e-8, abs(closed - oracle) <= 1e-8)
    elif target == "direct":
        n = _require_n(args)
        noise = NoiseParams(etas.ken, args.gamma_t, args.m)
        cfg = DirectReceiverConfig(args.transmissivity)
        cond = ke_conditionals(n, cfg, noise)
        quad = direct_error_quadrature(n, cfg, noise)
        record("k_infer_zero_given_alpha", cond.infer_zero_given_alpha,
               quad.infer_zero_given_alpha, 1e-6,
               abs(cond.infer_zero_given_alpha - quad.infer_zero_given_alpha) <= 1e-6)
        record("k_infer_alpha_given_zero", cond.infer_alpha_given_zero,
               quad.infer_alpha_given_zero, 1e-6,
               abs(cond.infer_alpha_given_zero - quad.infer_alpha_given_zero) <= 1e-6)
        closed = ke_noisy(n, cfg, noise)
        record("ke", closed, quad.error_probability, 1e-6,
               abs(closed - quad.error_probability) <= 1e-6)
    elif target == "homodyne":
        n = _require_n(args)
        noise = NoiseParams(etas.hom, args.gamma_t, args.m)
        closed = he_noisy(n, noise)
        est = mc_receiver("homodyne", n=n, noise=noise, shots=args.shots, seed=seed)
        tol = 3.0 * est.std_err
        record("homodyne", closed, est.mean, tol, abs(closed - est.mean) <= tol)
    elif target == "heterodyne":
        n = _require_n(args)
        noise = NoiseParams(etas.het, args.gamma_t, args.m)
        beta = beta_opt_full(n, noise) if args.beta == "auto" else args.beta
        closed = re_noisy(n, beta, noise)
        est = mc_receiver("heterodyne", n=n, noise=noise, beta=beta,
                          shots=args.shots, seed=seed)
        tol = 3.0 * est.std_err
        record("heterodyne", closed, est.mean, tol, abs(closed - est.mean) <= tol)
    elif target == "beta-opt":
        n = _require_n(args)
        noise = NoiseParams(etas.het, args.gamma_t, args.m)
        closed = beta_opt_full(n, noise)
        result = grid_argmin(lambda b: re_noisy(n, b, noise), (0.0, 0.9999), 1e-6)
        record("beta-opt", closed, result.argmin, 1e-4,
               abs(closed - result.argmin) <= 1e-4)
    elif target == "separability":
        n = _require_n(args)
        noise = NoiseParams(etas.het, args.gamma_t, args.m)
        for name, beta_s in (
            ("beta-s", survival_fraction(n, noise)),
            ("beta-s-printed", survival_fraction_printed(n, noise)),
        ):
            if beta_s is None or not 0.0 <= beta_s < 1.0 or math.isnan(beta_s):
                lines.append(f"{name}: {beta_s} is outside [0, 1); boundary unreachable  FAIL"
                             if name == "beta-s-printed" else
                             f"{name}: undefined (no fraction below 1 restores entanglement)")
                if name == "beta-s-printed":
                    checks.append({"check": name, "closed_form": beta_s, "oracle": 0.25,
                                   "discrepancy": math.inf, "tolerance": 1e-9, "passed": False})
                continue
            evolved = evolve_two_mode(ChannelBudget(n, beta_s), 0, noise)
            resid = abs(evolved.sigma_minus_sq - 0.25)
            passed = resid <= 1e-9
            checks.append({"check": name, "closed_form": beta_s,
                           "oracle": evolved.sigma_minus_sq, "discrepancy": resid,
                           "tolerance": 1e-9, "passed": passed})
            lines.append(
                f"{name} {beta_s:.12e}: |sigma_minus_sq - 1/4| = {resid:.3e}  tol 1e-09  "
                f"{'PASS' if passed else 'FAIL'}"
            )
        # only the derived form is required to pass; the printed variant is diagnostic
        checks_pass = [c for c in checks if c["check"] == "beta-s"]
        ok = all(c["passed"] for c in checks_pass) and bool(checks_pass)
        _verify_emit(args, target, seed, lines, checks)
        return 0 if ok else 1

    ok = all(c["passed"] for c in checks)
    _verify_emit(args, target, seed, lines, checks)
    return 0 if ok else 1


def _verify_emit(args, target, seed, lines, checks) -> None:
    if args.format == "json":
        payload = {
            "meta": {"version": __version__, "command": "verify", "target": target,
                     "seed": seed},
            "checks": checks,
        }
        text = json.dumps(payload, indent=2, default=_json_default) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_default(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return None
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    raise TypeError(f"cannot serialize {type(value)}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
