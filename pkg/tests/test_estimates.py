import numpy as np
import pytest

from fnls.estimates import (
    StrichartzProbe,
    bilinear_quotient,
    concentration_ratio,
    concentration_spot_check,
    convexity_gap_check,
    counting_oracle,
    l6_quotient,
    rescaling_transfer,
    resonance_psi,
    sharp_bilinear_example,
    sharp_block_lengths,
    spacetime_integral,
    strichartz_l4_quotient,
    trial_data,
)
from fnls.estimates.examples import coherence_time, sharp_quotient_scan, short_time_bilinear_scan
from fnls.estimates.strichartz import auto_time_samples, band_scaling, bilinear_value, check_time_samples
from fnls.spectral import SpectralField, TorusSpec, lp_norm
from fnls.utils.errors import ConfigError, LatticeError, PreconditionError


# ---------- resonance ----------
def test_resonance_psi_quadratic_case():
    assert resonance_psi(1.0, 3.0, 2.0, 1.0) == pytest.approx(8.0)
    out = resonance_psi(np.array([0.0, 1.0]), 3.0, 2.0, 0.75)
    assert out.shape == (2,)
    assert out[0] == pytest.approx(2 * 3 ** 1.5 - 2 * 2 ** 1.5)


def test_convexity_ratio_is_two_for_schrodinger():
    report = convexity_gap_check(8, 1.0)
    assert report.min_ratio == pytest.approx(2.0, rel=1e-12)
    assert report.max_ratio == pytest.approx(2.0, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_convexity_ratio_stays_positive(alpha):
    report = convexity_gap_check(12, alpha)
    line = np.arange(-12, 13)
    a, b, c = np.meshgrid(line, line, line, indexing="ij")
    assert report.tuples == int(np.count_nonzero((a + b != 0) & (b + c != 0)))
    assert report.min_ratio > 0.0
    assert report.to_dict()["alpha"] == alpha


def test_convexity_rejects_radius():
    with pytest.raises(ConfigError):
        convexity_gap_check(0, 0.75)


@pytest.mark.parametrize("k1, bound, lam, expected", [(0.0, 2.0, 1.0, 5), (0.0, 2.0, 2.0, 9), (0.25, 1.0, 2.0, 4)])
def test_counting_oracle(k1, bound, lam, expected):
    assert counting_oracle(k1, bound, lam) == expected


def test_counting_oracle_rejects_negative_bound():
    with pytest.raises(ConfigError):
        counting_oracle(0.0, -1.0)


# ---------- quadrature ----------
def test_time_samples_resolution():
    assert auto_time_samples(1.0, 4.0, 1.0) == 83
    check_time_samples(1.0, 83, 4.0, 1.0)
    with pytest.raises(PreconditionError):
        check_time_samples(1.0, 10, 4.0, 1.0)
    with pytest.raises(PreconditionError):
        check_time_samples(1.0, 1, 4.0, 1.0)


def test_spacetime_integral_of_single_mode():
    spec = TorusSpec(2.0, 64)
    phi = trial_data("single_mode", spec, 4.0, np.random.default_rng(0))
    assert spacetime_integral([phi], [4], 0.5, 0.75) == pytest.approx(0.5 * spec.volume, rel=1e-12)


def test_trial_data_band():
    spec = TorusSpec(1.0, 64)
    rng = np.random.default_rng(0)
    phi = trial_data("random_unimodular_phases", spec, 8.0, rng)
    assert sorted(np.abs(phi.support()).tolist()) == sorted(list(range(5, 9)) * 2)
    block = trial_data("block_exponential_sum", spec, 8.0, rng)
    assert lp_norm(block, 2) ** 2 == pytest.approx(8 * spec.volume)
    with pytest.raises(ConfigError):
        trial_data("gaussian", spec, 8.0, rng)


# ---------- quotients ----------
def test_probe_validation():
    spec = TorusSpec(1.0, 32)
    with pytest.raises(LatticeError):
        StrichartzProbe(spec, N=32.0, horizon=1.0, alpha=0.75)
    with pytest.raises(ConfigError):
        StrichartzProbe(spec, N=8.0, horizon=0.0, alpha=0.75)
    with pytest.raises(ConfigError):
        StrichartzProbe(spec, N=8.0, horizon=1.0, alpha=0.75, data_kind="gaussian")


def test_l4_quotient_single_mode_closed_form():
    probe = StrichartzProbe(TorusSpec(1.0, 64), N=8.0, horizon=1.0, alpha=0.75, data_kind="single_mode")
    report = strichartz_l4_quotient(probe, trials=16)
    assert len(report.per_trial) == 1
    expected = 1.0 / (2 * np.pi * (1.0 + 8 ** 0.25))
    assert report.max_quotient == pytest.approx(expected, rel=1e-10)


def test_l4_quotient_random_trials():
    probe = StrichartzProbe(TorusSpec(1.0, 64), N=8.0, horizon=1.0, alpha=0.75)
    report = strichartz_l4_quotient(probe, trials=4, rng=np.random.default_rng(3))
    assert len(report.per_trial) == 4
    assert report.max_quotient == max(report.per_trial) > 0
    assert report.to_dict()["probe"]["N"] == 8.0


def test_bilinear_preconditions():
    spec = TorusSpec(1.0, 128)
    with pytest.raises(PreconditionError):
        bilinear_quotient(StrichartzProbe(spec, N=16.0, horizon=1.0, alpha=0.75, N2=4.0))
    with pytest.raises(ConfigError):
        bilinear_quotient(StrichartzProbe(spec, N=32.0, horizon=1.0, alpha=0.75))


def test_bilinear_quotient_runs():
    probe = StrichartzProbe(TorusSpec(1.0, 128), N=32.0, horizon=0.5, alpha=0.75, N2=2.0)
    report = bilinear_quotient(probe, trials=2, rng=np.random.default_rng(0))
    assert report.kind == "strichartz_bilinear"
    assert len(report.per_trial) == 2


def test_l6_needs_long_horizon():
    probe = StrichartzProbe(TorusSpec(2.0, 64), N=4.0, horizon=1.0, alpha=0.75)
    with pytest.raises(PreconditionError):
        l6_quotient(probe)


def test_band_scaling_table():
    probes = [StrichartzProbe(TorusSpec(1.0, 64), N=N, horizon=1.0, alpha=0.75, data_kind="single_mode")
              for N in (4.0, 8.0, 16.0)]
    out = band_scaling("l4", probes, trials=1, rng=np.random.default_rng(0))
    assert list(out["table"]["N"]) == [4.0, 8.0, 16.0]
    # the single-mode quotient decays like N^{-(1 - alpha)} for large N
    assert out["fit"].slope < 0


@pytest.mark.parametrize("m_power", [2, 3])
def test_rescaling_transfer(m_power):
    out = rescaling_transfer(0.75, 4.0, 1.0, 4.0, m_power=m_power, num_points=128, rng=np.random.default_rng(1))
    assert out["relative_error"] <= 2e-2


def translated(f, x0):
    """f(x - x0)."""
    return SpectralField(f.spec, f.coeffs * np.exp(-1j * f.spec.frequencies * x0))


@pytest.mark.parametrize("x0, theta", [(0.37, 1.1), (np.pi, -2.0)])
def test_quotients_ignore_phase_and_translation(x0, theta):
    spec = TorusSpec(1.0, 128)
    rng = np.random.default_rng(4)
    phi1 = trial_data("random_unimodular_phases", spec, 16.0, rng)
    phi2 = trial_data("random_unimodular_phases", spec, 2.0, rng)
    moved1 = translated(phi1, x0).scaled(np.exp(1j * theta))
    moved2 = translated(phi2, x0).scaled(np.exp(-0.5j * theta))

    l4 = spacetime_integral([phi1], [4], 1.0, 0.75)
    assert spacetime_integral([moved1], [4], 1.0, 0.75) == pytest.approx(l4, rel=1e-10)
    q, num = bilinear_value(phi1, phi2, 1.0, 16.0, 0.75)
    q_moved, num_moved = bilinear_value(moved1, moved2, 1.0, 16.0, 0.75)
    assert q_moved == pytest.approx(q, rel=1e-10)
    assert num_moved == pytest.approx(num, rel=1e-10)


# ---------- sharp examples ----------
def test_sharp_block_lengths():
    assert sharp_block_lengths(64, 4, 0.75) == (4, 2)
    assert sharp_block_lengths(64, 4, 1.0) == (16, 4)


def test_sharp_example_support():
    phi1, phi2 = sharp_bilinear_example(64, 4, 0.75)
    assert phi1.support().tolist() == list(range(64, 69))
    assert phi2.support().tolist() == [4, 5, 6]
    with pytest.raises(PreconditionError):
        sharp_bilinear_example(16, 4, 0.75)


def test_sharp_pair_concentrates():
    out = concentration_ratio(64, 4, 0.75, trials=8, rng=np.random.default_rng(0))
    assert out["T"] == pytest.approx(1 / 16)
    assert out["ratio"] > 1.0


def test_concentration_spot_check():
    assert concentration_spot_check(64, 4, 0.75, c=0.25) >= 0.5


def test_coherence_time():
    assert coherence_time(64, 4, 0.75) == pytest.approx(1 / 16)
    assert coherence_time(64, 4, 0.5) == pytest.approx(1.0)


def test_trend_flag_follows_tolerance():
    out = sharp_quotient_scan([32, 64], 4, 0.75, trend_tolerance=10.0)
    assert out["trend_ok"] is True
    single = sharp_quotient_scan([64], 4, 0.75)
    assert single["fit"] is None and single["trend_ok"] is None


@pytest.mark.slow
def test_sharp_quotient_scan_and_short_times():
    out = sharp_quotient_scan([32, 64, 128], 4, 0.75, T=1.0)
    assert list(out["table"].columns[:3]) == ["N1", "N2", "quotient"]
    assert out["predicted_slope"] == pytest.approx(-0.5)
    assert out["fit"].slope == pytest.approx(-0.5, abs=0.15)
    assert out["trend_ok"] is True
    np.testing.assert_allclose(out["table"]["coherence_T"], [1 / 128 ** 0.5, 1 / 16, 1 / 512 ** 0.5])
    short = short_time_bilinear_scan(64, 4, 0.75, [1 / 128, 1 / 64, 1 / 32])
    assert short["threshold"] == pytest.approx(1 / 16)
    assert np.all(short["table"]["normalized_numerator"] > 0)
