"""
One runner per experiment kind.

A runner receives the validated parameters, the run's seeded generator, an
ArtifactWriter rooted at the output directory and the progress flag, and
returns the scalar results that go into report.json.
"""
from __future__ import annotations

import logging
import math

import numpy as np
import pandas as pd

from fnls.dynamics.integrator import EvolutionConfig, evolve
from fnls.dynamics.io_utils import export_trajectory
from fnls.estimates.examples import (
    concentration_ratio,
    concentration_spot_check,
    default_example_torus,
    sharp_block_lengths,
    sharp_quotient_scan,
    short_time_bilinear_scan,
)
from fnls.estimates.resonance import convexity_gap_check
from fnls.estimates.strichartz import DATA_KINDS, StrichartzProbe, band_scaling, bilinear_quotient, rescaling_transfer
from fnls.experiments.config import Param
from fnls.experiments.energy_track import energy_derivative_check, track
from fnls.experiments.lambda_selection import lambda_selection_table, rough_datum
from fnls.illposed.data import block_length, power_of_two_grid
from fnls.illposed.galilean import convolution_dominance_check, galilean_error, random_dominance_instances
from fnls.illposed.picard import (
    PICARD_COLUMNS,
    check_picard_time,
    picard_growth_experiment,
    picard_time_linearity,
)
from fnls.imethod.lattice import DEFAULT_BUDGET
from fnls.imethod.multipliers import DEFAULT_G1, G1_VARIANTS, ModifiedEnergyParams
from fnls.imethod.scans import SCAN_BUDGET, energy_gap_scaling, high_frequency_datum, m4_bound_scan, m4_table
from fnls.spectral.io_utils import read_field
from fnls.spectral.operators import dispersion_symbol
from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import ConfigError, LatticeError, PreconditionError
from fnls.utils.fitting import fit_loglog_slope

logger = logging.getLogger(__name__)

G1 = Param("str", DEFAULT_G1, choices=tuple(G1_VARIANTS))
DATA_KIND = Param("str", "random_unimodular_phases", choices=DATA_KINDS)


def _fit_dict(fit):
    return fit.to_dict() if fit is not None else None


# ---------- evolve ----------
EVOLVE_SCHEMA = {
    "alpha": Param("float"),
    "dt": Param("float"),
    "t_end": Param("float"),
    "lam": Param("float", 1.0),
    "num_points": Param("int", 256),
    "dealias": Param("bool", True),
    "band_limit": Param("float", None, nullable=True),
    "snapshots": Param("int", 32),
    "hs_orders": Param("floats", []),
    "datum": Param("str", "random", choices=("random", "single_mode", "file")),
    "modes": Param("int", 32),
    "mode_index": Param("int", 1),
    "amplitude": Param("float", 1.0),
    "datum_path": Param("str", None, nullable=True),
    "write_fields": Param("bool", True),
}


def initial_datum(params: dict, rng: np.random.Generator) -> SpectralField:
    """Random block of `modes` indices around 0, one lattice mode, or a field file."""
    kind = params["datum"]
    if kind == "file":
        if not params.get("datum_path"):
            raise ConfigError("datum: file needs datum_path")
        return read_field(params["datum_path"])
    spec = TorusSpec(params["lam"], params["num_points"])
    amp = params["amplitude"] * spec.volume
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    if kind == "single_mode":
        m = params["mode_index"]
        if not spec.resolves(m):
            raise ConfigError(f"mode_index {m} is beyond the grid band of {spec}")
        coeffs[spec.slot(m)] = amp
    else:
        count = params["modes"]
        idx = np.arange(-(count // 2), count - count // 2)
        if not spec.resolves(int(np.max(np.abs(idx)))):
            raise ConfigError(f"{count} modes do not fit on {spec}")
        gauss = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        coeffs[idx % spec.num_points] = amp * gauss / math.sqrt(2.0 * count)
    return SpectralField(spec, coeffs, params["alpha"])


def _evolution_config(params: dict, t_end: float) -> EvolutionConfig:
    return EvolutionConfig(
        alpha=params["alpha"],
        dt=params["dt"],
        t_end=t_end,
        dealias=params["dealias"],
        snapshots=params["snapshots"],
        band_limit=params["band_limit"],
        hs_orders=tuple(params.get("hs_orders", ())),
    )


def _check_retained(u0: SpectralField, evo: EvolutionConfig):
    keep = evo.retained_modes(u0.spec)
    if np.any(u0.coeffs[~keep] != 0):
        raise LatticeError(f"initial datum has modes outside the retained band of {u0.spec}")


def check_evolve(params: dict):
    evo = _evolution_config(params, params["t_end"])
    _check_retained(initial_datum(params, np.random.default_rng(0)), evo)


def single_mode_error(u0: SpectralField, final: SpectralField, t: float, alpha: float) -> float:
    """Max coefficient error against a e^{i(kx + (|k|^{2a} + |a|^2) t)}, in physical amplitude units."""
    spec = u0.spec
    amp = np.abs(u0.coeffs) / spec.volume
    phase = dispersion_symbol(spec.frequencies, alpha) + amp ** 2
    exact = u0.coeffs * np.exp(1j * phase * t)
    return float(np.max(np.abs(final.coeffs - exact)) / spec.volume)


def run_evolve(params: dict, rng: np.random.Generator, out, progress: bool) -> dict:
    u0 = initial_datum(params, rng)
    traj = evolve(u0, _evolution_config(params, params["t_end"]))
    out.extend(export_trajectory(traj, out.directory, fields=params["write_fields"]))
    results = {
        "num_points": u0.spec.num_points,
        "lambda": u0.spec.lam,
        "final_time": float(traj.times[-1]),
        "mass": float(traj.mass[-1]),
        "energy": float(traj.energy[-1]),
        **traj.diagnostics,
    }
    if params["datum"] == "single_mode":
        results["single_mode_error"] = single_mode_error(u0, traj.final, float(traj.times[-1]), params["alpha"])
    return results


# ---------- energy_track ----------
ENERGY_TRACK_SCHEMA = {
    "alpha": Param("float"),
    "s": Param("float"),
    "N": Param("float"),
    "Ns": Param("floats", []),
    "lam": Param("float", 1.0),
    "num_points": Param("int", 64),
    "dt": Param("float", 1e-3),
    "window": Param("float", 1.0),
    "snapshots": Param("int", 11),
    "dealias": Param("bool", True),
    "band_limit": Param("float", None, nullable=True),
    "datum": Param("str", "random", choices=("random", "high_frequency")),
    "modes": Param("int", 8),
    "low_modes": Param("int", 2),
    "amplitude": Param("float", 1.0),
    "derivative_samples": Param("int", 0),
    "derivative_step": Param("float", None, nullable=True),
    "derivative_extrapolate": Param("bool", True),
    "budget": Param("float", DEFAULT_BUDGET),
    "g1_variant": G1,
}


def _track_datum(params: dict, N: float, rng: np.random.Generator) -> SpectralField:
    if params["datum"] == "high_frequency":
        u = high_frequency_datum(N, rng, params["low_modes"])
        return u.scaled(params["amplitude"])
    spec = TorusSpec(params["lam"], params["num_points"])
    radius = params["modes"]
    if not spec.resolves(radius):
        raise ConfigError(f"modes={radius} is beyond the grid band of {spec}")
    idx = np.arange(-radius, radius + 1)
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    coeffs[idx % spec.num_points] = (
        params["amplitude"] * spec.volume * np.exp(2j * np.pi * rng.random(idx.size)) / math.sqrt(idx.size)
    )
    return SpectralField(spec, coeffs, params["alpha"])


def _check_derivative_grid(params: dict, spec: TorusSpec):
    band = params["band_limit"]
    if band is None:
        raise ConfigError("derivative_samples > 0 needs a band_limit (Galerkin truncation)")
    top = int(math.floor(band * spec.lam + 1e-9))
    if not 4 * top < spec.num_points:
        raise ConfigError(
            f"the sextic identity needs an alias-free cubic step: 4 * {top} must stay below num_points={spec.num_points}"
        )


def check_energy_track(params: dict):
    base = ModifiedEnergyParams(params["alpha"], params["s"], params["N"], params["g1_variant"])
    for N in params["Ns"]:
        base.with_N(N)
    evo = _evolution_config(params, params["window"])
    u0 = _track_datum(params, base.N, np.random.default_rng(0))
    _check_retained(u0, evo)
    if params["derivative_samples"] > 0:
        _check_derivative_grid(params, u0.spec)


def run_energy_track(params: dict, rng: np.random.Generator, out, progress: bool) -> dict:
    base = ModifiedEnergyParams(params["alpha"], params["s"], params["N"], params["g1_variant"])
    evo = _evolution_config(params, params["window"])
    u0 = _track_datum(params, base.N, rng)
    if params["derivative_samples"] > 0:
        _check_derivative_grid(params, u0.spec)

    main = track(u0, evo, base, params["budget"])
    out.csv("energy_track.csv", main["table"])
    results = {"N": base.N, "num_points": u0.spec.num_points, **main["summary"]}

    if params["derivative_samples"] > 0:
        check = energy_derivative_check(
            main["trajectory"], base, params["derivative_samples"], params["budget"],
            params["derivative_step"], params["derivative_extrapolate"],
        )
        out.csv("energy_derivative.csv", check)
        results["derivative_max_rel_error"] = float(check["rel_error"].max()) if len(check) else None

    if params["Ns"]:
        rows = []
        for N in params["Ns"]:
            scaled = base.with_N(N)
            datum = _track_datum(params, N, rng) if params["datum"] == "high_frequency" else u0
            summary = track(datum, evo, scaled, params["budget"])["summary"]
            rows.append({"N": float(N), **summary})
        frame = pd.DataFrame(rows)
        out.csv("energy_track_scaling.csv", frame)
        positive = frame["max_gap_ratio"] > 0
        if positive.sum() >= 2:
            results["gap_ratio_fit"] = fit_loglog_slope(frame["N"][positive], frame["max_gap_ratio"][positive]).to_dict()
        results["predicted_gap_slope"] = -params["alpha"]
    return results


# ---------- m4_scan / convexity_scan / energy_gap ----------
M4_SCAN_SCHEMA = {
    "alpha": Param("float"),
    "s": Param("float"),
    "N": Param("float"),
    "radius": Param("int"),
    "budget": Param("float", SCAN_BUDGET),
    "check_doubling": Param("bool", False),
    "table_radius": Param("int", 0),
    "g1_variant": G1,
}


def _modified_energy_params(params: dict, N: float) -> ModifiedEnergyParams:
    return ModifiedEnergyParams(params["alpha"], params["s"], N, params["g1_variant"])


def check_m4_scan(params: dict):
    _modified_energy_params(params, params["N"])
    if params["radius"] < 1:
        raise ConfigError(f"radius must be >= 1, got {params['radius']}")


def run_m4_scan(params: dict, rng: np.random.Generator, out, progress: bool) -> dict:
    mp = _modified_energy_params(params, params["N"])
    report = m4_bound_scan(mp, params["radius"], params["budget"], rng, progress)
    results = report.to_dict()
    if params["check_doubling"]:
        doubled = m4_bound_scan(mp, 2 * params["radius"], params["budget"], rng, progress)
        results["doubled"] = doubled.to_dict()
        results["doubling_rel_change"] = abs(doubled.sup_ratio - report.sup_ratio) / max(report.sup_ratio, 1e-300)
    if params["table_radius"] > 0:
        out.csv("m4_table.csv", m4_table(mp, params["table_radius"]))
    return results


CONVEXITY_SCHEMA = {
    "alphas": Param("floats"),
    "radius": Param("int"),
}


def check_convexity_scan(params: dict):
    if params["radius"] < 1:
        raise ConfigError(f"radius must be >= 1, got {params['radius']}")
    for alpha in params["alphas"]:
        if not 0.5 < alpha <= 1.0:
            raise ConfigError(f"alpha must lie in (1/2, 1], got {alpha}")


def run_convexity_scan(params: dict, rng: np.random.Generator, out, progress: bool) -> dict:
    reports = [convexity_gap_check(params["radius"], a, progress) for a in params["alphas"]]
    frame = pd.DataFrame([r.to_dict() for r in reports]).drop(columns=["argmin"])
    out.csv("convexity.csv", frame)
    return {"per_alpha": [r.to_dict() for r in reports], "min_ratio": float(frame["min_ratio"].min())}


ENERGY_GAP_SCHEMA = {
    "alpha": Param("float"),
    "s": Param("float"),
    "Ns": Param("floats"),
    "trials": Param("int", 4),
    "low_modes": Param("int", 2),
    "budget": Param("float", DEFAULT_BUDGET),
    "g1_variant": G1,
}


def check_energy_gap(params: dict):
    if len(params["Ns"]) < 2:
        raise ConfigError("energy_gap needs at least two values in Ns")
    for N in params["Ns"]:
        _modified_energy_params(params, N)


def run_energy_gap(params: dict, rng: np.random.Generator, out, progress: bool) -> dict:
    base = ModifiedEnergyParams(params["alpha"], params["s"], min(params["Ns"]), params["g1_variant"])
    scaling = energy_gap_scaling(base, params["Ns"], rng, params["trials"], params["low_modes"],
                                 params["budget"], progress)
    out.csv("energy_gap.csv", scaling["table"])
    return {"fit": scaling["fit"].to_dict(), "predicted_slope": -params["alpha"]}


# ---------- Strichartz ----------
def _auto_torus(lam: float, top: float, num_points: int) -> TorusSpec:
    if num_points:
        return TorusSpec(lam, num_points)
    size = 16
    while size // 2 - 1 < lam * top:
        size *= 2
    return TorusSpec(lam, size)


STRICHARTZ_COMMON = {
    "alpha": Param("float"),
    "lam": Param("float", 1.0),
    "num_points": Param("int", 0),
    "T": Param("float", 1.0),
    "trials": Param("int", 64),
    "data_kind": DATA_KIND,
    "time_samples": Param("int", None, nullable=True),
}
STRICHARTZ_L4_SCHEMA = {**STRICHARTZ_COMMON, "Ns": Param("floats")}
STRICHARTZ_L6_SCHEMA = {**STRICHARTZ_COMMON, "Ns": Param("floats")}
STRICHARTZ_BILINEAR_SCHEMA = {**STRICHARTZ_COMMON, "N1s": Param("floats"), "N2": Param("float")}


def _quotient_artifacts(out, name: str, scaling: dict):
    out.csv(f"{name}.csv", scaling["table"])
    rows = []
    for report in scaling["reports"]:
        for i, (q, num) in enumerate(zip(report.per_trial, report.numerators)):
            rows.append({"N": report.probe["N"], "N2": report.probe["N2"], "trial": i, "quotient": q, "numerator": num})
    out.csv(f"{name}_trials.csv", pd.DataFrame(rows))


def _run_band_scaling(kind: str, params: dict, bands, N2, rng, out, progress) -> dict:
    torus = _auto_torus(params["lam"], max(bands), params["num_points"])
    probes = [
        StrichartzProbe(torus, float(N), params["T"], params["alpha"], params["time_samples"], params["data_kind"], N2)
        for N in bands
    ]
    scaling = band_scaling(kind, probes, params["trials"], rng, progress)
    _quotient_artifacts(out, f"strichartz_{kind}", scaling)
    fit = scaling["fit"]
    return {
        "num_points": torus.num_points,
        "max_quotient": float(scaling["table"]["max_quotient"].max()),
        "fit": _fit_dict(fit),
        "bounded": bool(fit.slope <= 0.1) if fit is not None else None,
    }


def _check_bands(params: dict, bands, N2=None):
    if not bands:
        raise ConfigError("at least one band is required")
    torus = _auto_torus(params["lam"], max(bands), params["num_points"])
    for N in bands:
        StrichartzProbe(torus, float(N), params["T"], params["alpha"], params["time_samples"], params["data_kind"], N2)
        if N2 is not None and N < 8 * N2:
            raise PreconditionError(f"bilinear estimate needs N1 >= 8 N2, got N1={N}, N2={N2}")


def check_strichartz_l4(params: dict):
    _check_bands(params, params["Ns"])


def check_strichartz_l6(params: dict):
    _check_bands(params, params["Ns"])
    lam, a = params["lam"], params["alpha"]
    if params["T"] < lam ** (2.0 * a):
        raise PreconditionError(f"L6 estimate needs T >= lambda^(2 alpha) = {lam ** (2 * a):.6g}, got T={params['T']}")


def check_strichartz_bilinear(params: dict):
    _check_bands(params, params["N1s"], params["N2"])


def run_strichartz_l4(params, rng, out, progress):
    return _run_band_scaling("l4", params, params["Ns"], None, rng, out, progress)


def run_strichartz_l6(params, rng, out, progress):
    results = _run_band_scaling("l6", params, params["Ns"], None, rng, out, progress)
    bound = (1.0 - params["alpha"]) / 3.0 + 0.1
    results["predicted_slope_bound"] = bound
    results["within_predicted"] = bool(results["fit"]["slope"] <= bound) if results["fit"] else None
    return results


def run_strichartz_bilinear(params, rng, out, progress):
    return _run_band_scaling("bilinear", params, params["N1s"], params["N2"], rng, out, progress)


SHARP_SCHEMA = {
    "alpha": Param("float"),
    "N1s": Param("floats"),
    "N2": Param("float"),
    "T": Param("float", 1.0),
    "compare_trials": Param("int", 16),
    "concentration_trials": Param("int", 8),
    "spot_check_c": Param("float", 0.25),
    "short_times": Param("floats", []),
    "trend_tolerance": Param("float", 0.15),
    "random_factor": Param("float", 8.0),
}


def check_sharp_example(params: dict):
    for N1 in params["N1s"]:
        if N1 < 8 * params["N2"]:
            raise PreconditionError(f"sharp example needs N1 >= 8 N2, got N1={N1}, N2={params['N2']}")
        M1, _ = sharp_block_lengths(N1, params["N2"], params["alpha"])
        StrichartzProbe(default_example_torus(N1, M1), float(N1), params["T"], params["alpha"], N2=params["N2"])


def run_sharp_example(params, rng, out, progress):
    alpha, N2, T = params["alpha"], params["N2"], params["T"]
    scan = sharp_quotient_scan(params["N1s"], N2, alpha, T, params["trend_tolerance"])
    frame = scan["table"]
    random_max = []
    for N1 in params["N1s"]:
        M1, _ = sharp_block_lengths(N1, N2, alpha)
        probe = StrichartzProbe(default_example_torus(N1, M1), float(N1), T, alpha, N2=N2)
        random_max.append(bilinear_quotient(probe, params["compare_trials"], rng).max_quotient)
    frame["random_max_quotient"] = random_max
    frame["sharp_over_random"] = frame["quotient"] / frame["random_max_quotient"]
    out.csv("sharp_example.csv", frame)

    top = max(params["N1s"])
    M1, _ = sharp_block_lengths(top, N2, alpha)
    results = {
        "fit": _fit_dict(scan["fit"]),
        "fixed_horizon_fit": _fit_dict(scan["fixed_horizon_fit"]),
        "predicted_slope": scan["predicted_slope"],
        "trend_ok": scan["trend_ok"],
        "min_sharp_over_random": float(frame["sharp_over_random"].min()),
        "within_random_factor": bool(frame["sharp_over_random"].min() >= 1.0 / params["random_factor"]),
        "concentration": concentration_ratio(top, N2, alpha, trials=params["concentration_trials"], rng=rng),
        "spot_check": concentration_spot_check(int(top), M1, alpha, params["spot_check_c"]),
    }
    if params["short_times"]:
        short = short_time_bilinear_scan(top, N2, alpha, params["short_times"])
        out.csv("short_time.csv", short["table"])
        results["short_time_fit"] = _fit_dict(short["fit"])
        results["short_time_threshold"] = short["threshold"]
    return results


RESCALING_SCHEMA = {
    "alpha": Param("float"),
    "lam": Param("float"),
    "T": Param("float"),
    "N": Param("float"),
    "m_powers": Param("ints", [2, 3]),
    "num_points": Param("int", 256),
    "data_kind": DATA_KIND,
}


def check_rescaling_transfer(params: dict):
    spec = TorusSpec(params["lam"], params["num_points"])
    StrichartzProbe(spec, params["N"], params["T"], params["alpha"], data_kind=params["data_kind"])


def run_rescaling_transfer(params, rng, out, progress):
    rows = [
        rescaling_transfer(params["alpha"], params["lam"], params["T"], params["N"], m,
                           params["num_points"], rng, params["data_kind"])
        for m in params["m_powers"]
    ]
    frame = pd.DataFrame(rows)
    out.csv("rescaling_transfer.csv", frame)
    return {"max_relative_error": float(frame["relative_error"].max()), "per_power": rows}


# ---------- ill-posedness ----------
PICARD_SCHEMA = {
    "alpha": Param("float"),
    "s_values": Param("floats"),
    "n_list": Param("ints"),
    "t": Param("float", 0.05),
    "quad_nodes": Param("int", 64),
    "linearity_ts": Param("floats", []),
    "linearity_n": Param("int", 256),
}


def check_picard_growth(params: dict):
    check_picard_time(params["t"])
    n_list = params["n_list"]
    if len(n_list) < 2 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError(f"n_list must hold at least two strictly increasing integers, got {n_list}")
    for t in params["linearity_ts"]:
        check_picard_time(t)


def run_picard_growth(params, rng, out, progress):
    alpha = params["alpha"]
    tables, per_s = [], []
    for s in params["s_values"]:
        exp = picard_growth_experiment(s, alpha, params["n_list"], params["t"], params["quad_nodes"], progress)
        table = exp["table"][PICARD_COLUMNS].copy()
        table.insert(0, "s", s)
        tables.append(table)
        per_s.append({
            "s": s,
            "predicted_exponent": exp["predicted_exponent"],
            "fitted_exponent": exp["fitted_exponent"],
            "raw_exponent": exp["raw_fit"].slope,
            "finite_size_correction": exp["correction"],
            "fit": exp["fit"].to_dict(),
        })
    out.csv("picard_growth.csv", pd.concat(tables, ignore_index=True))
    results = {"per_s": per_s}
    if params["linearity_ts"]:
        lin = picard_time_linearity(params["linearity_n"], params["s_values"][0], alpha,
                                    params["linearity_ts"], params["quad_nodes"])
        out.csv("picard_time_linearity.csv", lin["table"])
        results["time_linearity"] = lin["fit"].to_dict()
    return results


GALILEAN_SCHEMA = {
    "alpha": Param("float"),
    "n_list": Param("ints"),
    "ts": Param("floats"),
    "l": Param("int", None, nullable=True),
}


def _random_block(l: int, rng: np.random.Generator) -> SpectralField:
    spec = power_of_two_grid(l)
    idx = np.arange(-l, l + 1)
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    coeffs[idx % spec.num_points] = spec.volume * (rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size))
    return SpectralField(spec, coeffs)


def check_galilean(params: dict):
    for n in params["n_list"]:
        l = params["l"] if params["l"] is not None else block_length(n, params["alpha"])
        if n < l:
            raise PreconditionError(f"carrier n={n} must be >= l={l}")


def run_galilean(params, rng, out, progress):
    rows = []
    for n in params["n_list"]:
        l = params["l"] if params["l"] is not None else block_length(n, params["alpha"])
        f = _random_block(l, rng)
        for t in params["ts"]:
            rows.append(galilean_error(f, n, t, params["alpha"], l).to_dict())
    frame = pd.DataFrame(rows)
    out.csv("galilean.csv", frame)
    worst = float(frame["max_ratio"].max())
    return {"max_ratio": worst, "holds": bool(worst <= 1.0 + 1e-9)}


DOMINANCE_SCHEMA = {
    "count": Param("int", 1000),
    "pairs": Param("pairs", [[1, 1], [2, 1], [1, 2]]),
    "modes": Param("int", 6),
    "num_points": Param("int", 64),
}


def check_dominance(params: dict):
    for p, q in params["pairs"]:
        if p < 1 or q < 1:
            raise ConfigError(f"dominance pairs need positive integers, got ({p}, {q})")


def run_dominance(params, rng, out, progress):
    rows = []
    for i, (f, g) in enumerate(random_dominance_instances(params["count"], rng, params["modes"], params["num_points"])):
        for p, q in params["pairs"]:
            rows.append({"instance": i, **convolution_dominance_check(f, g, p, q).to_dict()})
    frame = pd.DataFrame(rows)
    out.csv("dominance.csv", frame)
    return {
        "instances": params["count"],
        "checks": len(frame),
        "violations": int((~frame["holds"]).sum()),
        "min_slack": float(frame["slack"].min()),
    }


# ---------- lambda selection ----------
LAMBDA_SCHEMA = {
    "alpha": Param("float"),
    "s": Param("float"),
    "Ns": Param("floats"),
    "num_points": Param("int", 2048),
    "delta": Param("float", 0.05),
    "max_index": Param("int", None, nullable=True),
    "g1_variant": G1,
}


def check_lambda_selection(params: dict):
    if not params["s"] > 0:
        raise ConfigError(f"lambda selection needs s > 0, got {params['s']}")
    for N in params["Ns"]:
        _modified_energy_params(params, N)
    spec = TorusSpec(1.0, params["num_points"])
    max_index = spec.num_points // 4 if params["max_index"] is None else params["max_index"]
    if not spec.resolves(max_index):
        raise LatticeError(f"max_index={max_index} beyond the grid band of {spec}")


def run_lambda_selection(params, rng, out, progress):
    u0 = rough_datum(TorusSpec(1.0, params["num_points"]), params["s"], params["delta"], rng, params["max_index"])
    frame = lambda_selection_table(u0, params["Ns"], params["s"], params["alpha"], params["g1_variant"])
    out.csv("lambda_selection.csv", frame)
    scaled = frame["e1_scaled"].to_numpy()
    return {
        "lambdas": frame["lambda"].tolist(),
        "e1_scaled": scaled.tolist(),
        "spread": float(scaled.max() / scaled.min()) if scaled.min() > 0 else None,
    }
