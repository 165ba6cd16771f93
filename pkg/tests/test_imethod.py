import numpy as np
import pytest

from fnls.dynamics import EvolutionConfig, energy
from fnls.experiments.energy_track import energy_derivative_check, flow_derivative
from fnls.dynamics.integrator import evolve
from fnls.imethod import (
    G1_VARIANTS,
    FrequencyTuple,
    ModifiedEnergyParams,
    apply_I,
    e1,
    e1_dual,
    e2,
    energy_derivative,
    energy_gap_ratio,
    g1,
    lambda_n,
    m,
    m4,
    m6,
    m6_values,
    sandwich_bounds,
)
from fnls.imethod.lattice import ONE
from fnls.imethod.scans import energy_gap_scaling, high_frequency_datum, m4_bound_scan, m4_table
from fnls.spectral import SpectralField, TorusSpec, lp_norm, synthesize
from fnls.utils.errors import BudgetExceededError, ConfigError, LatticeError, PreconditionError


@pytest.fixture
def params():
    return ModifiedEnergyParams(alpha=0.75, s=0.2, N=4.0)


def block(spec, radius, amplitude=1.0, seed=3):
    rng = np.random.default_rng(seed)
    idx = np.arange(-radius, radius + 1)
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    coeffs[idx % spec.num_points] = amplitude * spec.volume * np.exp(2j * np.pi * rng.uniform(size=idx.size))
    return SpectralField(spec, coeffs / np.sqrt(idx.size))


# ---------- g_1 and m ----------
@pytest.mark.parametrize("variant", sorted(G1_VARIANTS))
def test_g1_outer_branches(variant):
    x = np.array([-5.0, -3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0])
    out = g1(x, variant)
    np.testing.assert_allclose(out[2:7], 1.0)
    np.testing.assert_allclose(out[[0, 1, 8, 9]], [0.2, 1 / 3, 1 / 3, 0.2])
    assert out[7] == pytest.approx(0.5)
    np.testing.assert_array_equal(g1(-x, variant), out)


@pytest.mark.parametrize("variant", sorted(G1_VARIANTS))
def test_g1_is_non_increasing(variant):
    x = np.linspace(0.0, 4.0, 4001)
    assert np.all(np.diff(g1(x, variant)) <= 1e-15)


def test_g1_scalar_and_unknown_variant():
    assert isinstance(g1(1.5), float)
    with pytest.raises(ConfigError):
        g1(1.5, "linear")


def test_m_values(params):
    assert m(3.0, params) == pytest.approx(1.0)
    assert m(16.0, params) == pytest.approx((4 / 16) ** 0.55)
    assert m(-16.0, params) == m(16.0, params)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(alpha=0.5, s=0.3, N=2.0),
        dict(alpha=1.0, s=0.3, N=2.0),
        dict(alpha=0.75, s=0.75, N=2.0),
        dict(alpha=0.75, s=0.1, N=2.0),
        dict(alpha=0.75, s=0.2, N=0.5),
        dict(alpha=0.75, s=0.2, N=2.0, g1_variant="linear"),
    ],
)
def test_modified_energy_params_rejects(kwargs):
    with pytest.raises(ConfigError):
        ModifiedEnergyParams(**kwargs)


def test_with_n_keeps_the_rest(params):
    other = params.with_N(16)
    assert (other.alpha, other.s, other.N, other.g1_variant) == (0.75, 0.2, 16.0, params.g1_variant)
    assert other.beta == pytest.approx(0.55)


def test_apply_i_negative_beta(params):
    with pytest.raises(PreconditionError):
        apply_I(block(TorusSpec(1.0, 32), 4), params, beta_override=-0.1)


def test_apply_i_identity_on_low_modes(params):
    u = block(TorusSpec(1.0, 32), 4)
    np.testing.assert_allclose(apply_I(u, params).coeffs, u.coeffs)


@pytest.mark.parametrize("N", [1.0, 4.0, 16.0, 64.0])
def test_sandwich_bounds_uniform_in_n(N):
    u = block(TorusSpec(1.0, 512), 200)
    out = sandwich_bounds(u, ModifiedEnergyParams(alpha=0.8, s=0.3, N=N))
    assert 0 < out["lower"] <= 1.0 + 1e-12
    assert 0 < out["upper"] <= 2.0


# ---------- frequency tuples and Lambda_n ----------
def test_frequency_tuple():
    k = FrequencyTuple.from_frequencies((0.5, -1.5, 2.0, -1.0), lam=2.0)
    assert k.indices == (1, -3, 4, -2)
    assert k.k_star(1) == 2.0 and k.k_star(3) == 1.0
    with pytest.raises(LatticeError):
        FrequencyTuple((1, 2, -1, 0, 1, 0))
    with pytest.raises(LatticeError):
        FrequencyTuple((1, -1, 0))
    with pytest.raises(LatticeError):
        FrequencyTuple.from_frequencies((0.3, -0.3), lam=2.0)


@pytest.mark.parametrize("lam", [1.0, 2.0])
def test_lambda4_physical_matches_direct(lam):
    u = block(TorusSpec(lam, 32), 5)
    physical = lambda_n(ONE, u, 4)
    direct = lambda_n(ONE, u, 4, method="direct")
    assert direct.real == pytest.approx(physical.real, rel=1e-10)
    assert abs(direct.imag) <= 1e-10 * abs(direct)
    assert physical.real == pytest.approx(lp_norm(u, 4) ** 4, rel=1e-10)


def test_lambda2_is_squared_l2():
    u = block(TorusSpec(1.0, 32), 5)
    assert lambda_n(ONE, u, 2, method="direct").real == pytest.approx(lp_norm(u, 2) ** 2, rel=1e-12)


def test_lambda_n_guards():
    u = block(TorusSpec(1.0, 32), 2)
    with pytest.raises(BudgetExceededError) as info:
        lambda_n(ONE, u, 6, budget=10, method="direct")
    assert info.value.estimated_cost == 5 ** 5
    with pytest.raises(LatticeError):
        lambda_n(ONE, u, 3)


# ---------- M_4, M_6 and the modified energies ----------
def test_m4_is_one_below_n(params):
    assert m4(FrequencyTuple((1, 2, -4, 1)), params) == pytest.approx(1.0)


def test_m4_resonant_branch(params):
    k = FrequencyTuple((20, -20, 20, -20))
    assert m4(k, params) == pytest.approx(m(20.0, params) ** 4)
    k = FrequencyTuple((1, -1, 12, -12))
    assert m4(k, params) == pytest.approx(m(12.0, params) ** 2)


def test_m4_and_m6_check_order(params):
    with pytest.raises(LatticeError):
        m4(FrequencyTuple((1, -1, 1, -1, 1, -1)), params)
    with pytest.raises(LatticeError):
        m6(FrequencyTuple((1, -1, 1, -1)), params)


def test_m6_vanishes_on_low_frequencies(params):
    assert m6(FrequencyTuple((1, -1, 1, -1, 1, -1)), params) == pytest.approx(0.0, abs=1e-14)


def test_m4_high_low_example():
    params = ModifiedEnergyParams(alpha=0.75, s=0.25, N=4.0)
    # m(32)^2 = 1/8, m(33)^2 = 4/33 on the outer branch, m(1) = m(0) = 1
    num = 32 ** 1.5 / 8 - 33 ** 1.5 * 4 / 33 + 1.0
    den = 32 ** 1.5 - 33 ** 1.5 + 1.0
    assert m4(FrequencyTuple((32, -33, 1, 0)), params) == pytest.approx(num / den, rel=1e-12)


def test_m4_and_m6_relabelings(params):
    k4 = (11, -7, 5, -9)
    assert m4(FrequencyTuple(k4[::-1]), params) == pytest.approx(m4(FrequencyTuple(k4), params), rel=1e-12)
    assert m4(FrequencyTuple((5, -7, 11, -9)), params) == pytest.approx(m4(FrequencyTuple(k4), params), rel=1e-12)
    k6 = (9, -4, 6, -13, 5, -3)
    value = m6(FrequencyTuple(k6), params)
    assert value != 0.0
    assert m6(FrequencyTuple(k6[::-1]), params) == pytest.approx(-value, rel=1e-12)


def test_lambda6_of_m6_is_imaginary():
    params = ModifiedEnergyParams(alpha=0.75, s=0.2, N=2.0)
    u = block(TorusSpec(1.0, 32), 4)
    value, scale = lambda_n(lambda *ks: m6_values(*ks, params), u, 6, method="direct", return_scale=True)
    assert abs(value.imag) > 1e-8 * scale
    assert abs(value.real) <= 1e-10 * scale


@pytest.mark.parametrize("lam, a", [(1.0, 0.8), (2.0, 1.3)])
def test_lambda6_single_mode(lam, a):
    spec = TorusSpec(lam, 32)
    u = synthesize(spec, {3: spec.volume * a}, by_index=True)
    expected = a ** 6 * spec.volume
    assert lambda_n(ONE, u, 6, method="direct").real == pytest.approx(expected, rel=1e-12)
    assert lambda_n(ONE, u, 6).real == pytest.approx(expected, rel=1e-12)
    assert lp_norm(u, 6) ** 6 == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x0, theta", [(0.4, 0.9), (2.5, -1.7)])
def test_e2_ignores_phase_and_translation(params, x0, theta):
    u = block(TorusSpec(1.0, 32), 6)
    moved = SpectralField(u.spec, u.coeffs * np.exp(-1j * u.spec.frequencies * x0)).scaled(np.exp(1j * theta))
    assert e2(moved, params) == pytest.approx(e2(u, params), rel=1e-10)


def test_e1_paths_agree(params):
    u = block(TorusSpec(1.0, 64), 12)
    assert e1_dual(u, params) == pytest.approx(e1(u, params), rel=1e-9)


def test_modified_energies_equal_energy_below_n(params):
    u = block(TorusSpec(1.0, 32), 1, amplitude=0.8)
    assert e1(u, params) == pytest.approx(energy(u, 0.75), rel=1e-12)
    assert e2(u, params) == pytest.approx(energy(u, 0.75), rel=1e-10)
    assert energy_gap_ratio(u, params) <= 1e-10
    assert energy_derivative(u, params) == pytest.approx(0.0, abs=1e-10)


def test_gap_is_positive_above_n(params):
    u = high_frequency_datum(4.0, np.random.default_rng(0))
    assert energy_gap_ratio(u, params) > 0.0


def galerkin_state(radius=5, seed=3):
    spec = TorusSpec(1.0, 64)
    retained = EvolutionConfig(alpha=0.75, dt=1e-3, t_end=0.01, band_limit=float(radius)).retained_modes(spec)
    return block(spec, radius, seed=seed), retained


def test_flow_derivative_is_second_order_in_the_step():
    params = ModifiedEnergyParams(alpha=0.75, s=0.2, N=1.5)
    u, retained = galerkin_state()
    exact = energy_derivative(u, params, retained)
    errors = [abs(flow_derivative(u, params, retained, h, extrapolate=False) - exact) / abs(exact)
              for h in (2e-3, 1e-3)]
    # halving the step cuts the error by about four
    assert errors[0] / errors[1] >= 2.5
    extrapolated = flow_derivative(u, params, retained, 1e-3)
    assert abs(extrapolated - exact) / abs(exact) <= 5e-4


def test_flow_derivative_vanishes_below_n(params):
    u, retained = galerkin_state(radius=1)
    assert energy_derivative(u, params, retained) == pytest.approx(0.0, abs=1e-10)
    assert abs(flow_derivative(u, params, retained, 1e-3)) <= 1e-8


@pytest.mark.slow
def test_energy_derivative_matches_galerkin_flow():
    params = ModifiedEnergyParams(alpha=0.75, s=0.2, N=1.5)
    u0, _ = galerkin_state()
    evo = EvolutionConfig(alpha=0.75, dt=2e-4, t_end=0.04, snapshots=21, band_limit=5.0)
    check = energy_derivative_check(evolve(u0, evo), params, samples=10)
    assert len(check) == 10
    assert (check["step"] == pytest.approx(2e-4)).all()
    assert check["rel_error"].max() <= 5e-4


# ---------- scans ----------
def test_m4_bound_scan_exhaustive(params):
    report = m4_bound_scan(params, radius=6)
    table = m4_table(params, radius=6)
    assert report.mode == "exhaustive"
    assert report.tuples == len(table)
    assert report.resonant_tuples == int(table["resonant_flag"].sum()) > 0
    assert 1.0 <= report.sup_ratio < np.inf
    assert report.verify_samples > 0 and report.verify_max_rel_diff < 1e-4
    assert report.to_dict()["g1_variant"] == "quintic-log"


def test_m4_bound_scan_sampled(params):
    report = m4_bound_scan(params, radius=40, budget=1e4, rng=np.random.default_rng(5))
    assert report.mode == "sampled"
    assert report.sup_ratio >= 1.0


def test_m4_sup_is_stable_under_radius_doubling():
    params = ModifiedEnergyParams(alpha=0.75, s=0.25, N=4.0)
    small = m4_bound_scan(params, radius=16)
    large = m4_bound_scan(params, radius=32)
    assert large.mode == small.mode == "exhaustive"
    assert large.sup_ratio >= small.sup_ratio
    assert large.sup_ratio <= 1.1 * small.sup_ratio


def test_m4_bound_scan_rejects_radius(params):
    with pytest.raises(ConfigError):
        m4_bound_scan(params, radius=0)


def test_m4_table_columns(params):
    table = m4_table(params, radius=2)
    assert list(table.columns) == ["k1", "k2", "k3", "k4", "M4", "resonant_flag"]
    assert (table[["k1", "k2", "k3", "k4"]].sum(axis=1) == 0).all()


def test_high_frequency_datum_support():
    u = high_frequency_datum(4.0, np.random.default_rng(1), low_modes=1)
    support = set(np.abs(u.support()).tolist())
    assert support == {0, 1} | set(range(8, 17))
    assert u.spec.max_index >= 32


@pytest.mark.slow
def test_energy_gap_scaling_runs(params):
    out = energy_gap_scaling(params, [2, 4, 8], np.random.default_rng(2), trials=2)
    assert list(out["table"]["N"]) == [2.0, 4.0, 8.0]
    assert np.all(out["table"]["max_ratio"] > 0)
    assert np.isfinite(out["fit"].slope)
