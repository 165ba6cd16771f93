import numpy as np
import pandas as pd
import pytest

from fnls.dynamics import EvolutionConfig, duhamel_nonlinear, energy, evolve, mass, scaling_exponents
from fnls.dynamics.io_utils import export_trajectory
from fnls.spectral import SpectralField, TorusSpec, lp_norm, propagate, sobolev_norm, synthesize
from fnls.utils.errors import ConfigError, LatticeError


def plane_wave(spec, m, amplitude=1.0):
    return synthesize(spec, {m: spec.volume * amplitude}, by_index=True)


def random_block(spec, radius, amplitude, seed=7, modes=None):
    """Gaussian coefficients on [-radius, radius], or on `modes` indices around 0 when given."""
    rng = np.random.default_rng(seed)
    idx = np.arange(-radius, radius + 1) if modes is None else np.arange(-(modes // 2), modes - modes // 2)
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    gauss = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    coeffs[idx % spec.num_points] = amplitude * spec.volume * gauss / np.sqrt(2 * idx.size)
    return SpectralField(spec, coeffs)


# ---------- functionals ----------
def test_mass_of_plane_wave():
    f = plane_wave(TorusSpec(1.0, 32), 3)
    assert mass(f) == pytest.approx(np.sqrt(2 * np.pi), rel=1e-12)
    assert mass(SpectralField.zeros(TorusSpec(1.0, 32))) == 0.0


@pytest.mark.parametrize("lam, m, a, alpha", [(1.0, 1, 1.0, 1.0), (2.0, 3, 0.6, 0.75), (3.0, -2, 1.3, 0.6)])
def test_energy_plane_wave_closed_form(lam, m, a, alpha):
    spec = TorusSpec(lam, 32)
    k = m / lam
    expected = np.pi * lam * a ** 2 * abs(k) ** (2 * alpha) + 0.5 * np.pi * lam * a ** 4
    assert energy(plane_wave(spec, m, a), alpha) == pytest.approx(expected, rel=1e-12)


def test_energy_alpha_one_unit_wave():
    assert energy(plane_wave(TorusSpec(1.0, 16), 1), 1.0) == pytest.approx(np.pi + np.pi / 2, rel=1e-12)


def test_energy_of_zero_field():
    assert energy(SpectralField.zeros(TorusSpec(1.0, 16)), 0.75) == 0.0


def test_scaling_exponents():
    out = scaling_exponents(0.75)
    assert out["s_c"] == pytest.approx(-0.25)
    assert out["s_g"] == pytest.approx(0.125)


# ---------- configuration ----------
@pytest.mark.parametrize(
    "kwargs",
    [
        dict(alpha=0.5, dt=0.01, t_end=1.0),
        dict(alpha=1.2, dt=0.01, t_end=1.0),
        dict(alpha=0.75, dt=1.0, t_end=1.0),
        dict(alpha=0.75, dt=0.01, t_end=1.0, snapshots=1),
        dict(alpha=0.75, dt=0.01, t_end=1.0, scheme="lie"),
        dict(alpha=0.75, dt=0.01, t_end=1.0, band_limit=0.0),
    ],
)
def test_evolution_config_rejects(kwargs):
    with pytest.raises(ConfigError):
        EvolutionConfig(**kwargs)


def test_retained_modes_and_stiffness():
    spec = TorusSpec(1.0, 30)
    cfg = EvolutionConfig(alpha=1.0, dt=0.01, t_end=1.0, band_limit=4.0)
    keep = cfg.retained_modes(spec)
    assert sorted(spec.modes[keep].tolist()) == list(range(-4, 5))
    assert cfg.stiffness(spec) == pytest.approx(0.01 * 14 ** 2)


# ---------- integrator ----------
def test_single_mode_is_exact():
    spec = TorusSpec(1.0, 32)
    a, m, alpha, t = 0.8, 3, 0.75, 1.0
    u0 = plane_wave(spec, m, a)
    traj = evolve(u0, EvolutionConfig(alpha=alpha, dt=0.01, t_end=t, snapshots=5))
    exact = u0.coeffs * np.exp(1j * (m ** (2 * alpha) + a ** 2) * t)
    assert traj.times[-1] == pytest.approx(t)
    assert np.max(np.abs(traj.final.coeffs - exact)) / spec.volume < 1e-10


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_mass_conservation(alpha):
    u0 = random_block(TorusSpec(1.0, 256), 12, 0.3)
    traj = evolve(u0, EvolutionConfig(alpha=alpha, dt=1e-3, t_end=1.0))
    assert traj.diagnostics["mass_drift"] <= 1e-9
    assert traj.diagnostics["energy_drift"] <= 1e-5
    assert np.all(np.diff(traj.times) > 0)
    assert all(s.spec == u0.spec for s in traj.snapshots)


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_energy_drift_is_second_order(alpha):
    u0 = random_block(TorusSpec(1.0, 256), 16, 1.0, modes=32)
    runs = [evolve(u0, EvolutionConfig(alpha=alpha, dt=dt, t_end=1.0, snapshots=11)) for dt in (2e-3, 1e-3)]
    drifts = [run.diagnostics["energy_drift"] for run in runs]
    assert drifts[0] / drifts[1] == pytest.approx(4.0, abs=0.5)
    assert max(run.diagnostics["mass_drift"] for run in runs) <= 1e-9



def test_snapshot_schedule_and_norms():
    u0 = random_block(TorusSpec(1.0, 64), 4, 0.3)
    traj = evolve(u0, EvolutionConfig(alpha=0.75, dt=1e-3, t_end=1.0, snapshots=32, hs_orders=(0.5,)))
    assert len(traj.times) == 32
    assert traj.times[0] == 0.0
    assert traj.hs_norms[0.5][0] == pytest.approx(sobolev_norm(u0, 0.5))
    assert traj.diagnostics["n_steps"] == 1000
    frame = traj.to_frame()
    assert list(frame.columns) == ["t", "mass", "energy", "h_s_norm(0.5)"]
    assert frame["mass"].iloc[0] == pytest.approx(mass(u0))


def test_uneven_end_time_adjusts_step():
    u0 = plane_wave(TorusSpec(1.0, 16), 1, 0.5)
    traj = evolve(u0, EvolutionConfig(alpha=0.75, dt=0.3, t_end=1.0, snapshots=2))
    assert traj.diagnostics["n_steps"] == 4
    assert traj.times[-1] == pytest.approx(1.0)


def test_datum_outside_retained_band_is_rejected():
    with pytest.raises(LatticeError):
        evolve(plane_wave(TorusSpec(1.0, 32), 12), EvolutionConfig(alpha=0.75, dt=0.01, t_end=0.1))
    with pytest.raises(LatticeError):
        evolve(plane_wave(TorusSpec(1.0, 32), 5), EvolutionConfig(alpha=0.75, dt=0.01, t_end=0.1, band_limit=4))


def test_export_trajectory(tmp_path):
    u0 = random_block(TorusSpec(1.0, 32), 3, 0.3)
    traj = evolve(u0, EvolutionConfig(alpha=0.75, dt=0.01, t_end=0.1, snapshots=3, hs_orders=(0.5,)))
    written = export_trajectory(traj, str(tmp_path))
    frame = pd.read_csv(tmp_path / "trajectory.csv")
    assert list(frame.columns) == ["t", "mass", "energy", "h_s_norm(0.5)"]
    assert len(frame) == 3
    assert len(written) == 1 + 3
    assert (tmp_path / "snapshots" / "snapshot_0002.txt").exists()


# ---------- Duhamel ----------
def test_duhamel_of_zero_is_zero():
    spec = TorusSpec(1.0, 32)
    out = duhamel_nonlinear(SpectralField.zeros(spec), 0.5, 0.75)
    assert not np.any(out.coeffs)


def test_duhamel_single_mode_closed_form():
    spec = TorusSpec(1.0, 32)
    a, m, alpha, t = 0.7, 3, 0.75, 0.4
    out = duhamel_nonlinear(plane_wave(spec, m, a), t, alpha)
    expected = spec.volume * 1j * t * a ** 3 * np.exp(1j * m ** (2 * alpha) * t)
    assert out.coefficient(3.0) == pytest.approx(expected, rel=1e-12)
    assert out.support().tolist() == [3]


def test_duhamel_quadrature_self_convergence():
    spec = TorusSpec(1.0, 64)
    u0 = synthesize(spec, {m: spec.volume for m in (5, 6, 7)}, by_index=True)
    coarse = duhamel_nonlinear(u0, 0.05, 0.75, quad_nodes=64)
    fine = duhamel_nonlinear(u0, 0.05, 0.75, quad_nodes=128)
    assert lp_norm(fine - coarse, 2) <= 1e-8 * lp_norm(fine, 2)


def test_duhamel_rejects_unresolved_cubic():
    spec = TorusSpec(1.0, 32)
    u0 = synthesize(spec, {m: spec.volume for m in (2, 14)}, by_index=True)
    with pytest.raises(LatticeError):
        duhamel_nonlinear(u0, 0.1, 0.75)


def test_duhamel_is_the_cubic_term_of_the_flow():
    spec = TorusSpec(1.0, 64)
    shape = synthesize(spec, {m: spec.volume for m in (1, 2, 3)}, by_index=True)
    alpha, t = 0.75, 0.5
    residuals = []
    for eps in (0.05, 0.1):
        u0 = shape.scaled(eps)
        final = evolve(u0, EvolutionConfig(alpha=alpha, dt=1e-4, t_end=t, snapshots=2)).final
        rest = final - propagate(u0, t, alpha) - duhamel_nonlinear(u0, t, alpha)
        residuals.append(lp_norm(rest, 2))
    # the remainder starts at the quintic term
    assert 26.0 < residuals[1] / residuals[0] < 38.0
