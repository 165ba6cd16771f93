import numpy as np
import pytest
from scipy.integrate import trapezoid

from fnls.spectral import (
    SpectralField,
    TorusSpec,
    dyadic_scales,
    littlewood_paley,
    lp_norm,
    project,
    propagate,
    rescale_down,
    rescale_up,
    resample,
    sobolev_norm,
    synthesize,
)
from fnls.spectral.io_utils import format_field, parse_field, read_field, write_field
from fnls.utils.errors import LatticeError


def plane_wave(spec, m, amplitude=1.0):
    """amplitude * exp(i m x / lam) with physical amplitude `amplitude`."""
    return synthesize(spec, {m: spec.volume * amplitude}, by_index=True)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_field(rng):
    spec = TorusSpec(1.0, 64)
    coeffs = np.zeros(64, dtype=np.complex128)
    idx = np.arange(-20, 21)
    coeffs[idx % 64] = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    return SpectralField(spec, coeffs)


# ---------- TorusSpec ----------
@pytest.mark.parametrize("lam, num_points", [(0.5, 16), (1.0, 7), (1.0, 2), (float("inf"), 16)])
def test_torus_spec_rejects_invalid(lam, num_points):
    with pytest.raises(LatticeError):
        TorusSpec(lam, num_points)


def test_torus_spec_band():
    spec = TorusSpec(2.0, 16)
    assert spec.max_index == 7
    assert spec.k_max == pytest.approx(3.5)
    assert spec.modes[0] == 0 and spec.modes[8] == -8
    assert spec.index_of(0.5) == 1
    with pytest.raises(LatticeError):
        spec.index_of(0.3)
    with pytest.raises(LatticeError):
        spec.index_of(4.0)


def test_synthesize_constant_mode():
    spec = TorusSpec(1.0, 64)
    f = synthesize(spec, {0.0: 1.0})
    np.testing.assert_allclose(f.samples(), np.full(64, 1.0 / (2 * np.pi)), rtol=1e-12)


def test_synthesize_half_frequency_on_wide_torus():
    spec = TorusSpec(2.0, 8)
    f = synthesize(spec, {0.5: 2 * np.pi * 2})
    np.testing.assert_allclose(f.samples(), np.exp(0.5j * spec.grid), atol=1e-12)


def test_synthesize_rejects_unresolved():
    with pytest.raises(LatticeError):
        synthesize(TorusSpec(1.0, 8), {7.0: 1.0})


def test_samples_round_trip(random_field):
    back = SpectralField.from_samples(random_field.spec, random_field.samples())
    np.testing.assert_allclose(back.coeffs, random_field.coeffs, rtol=0, atol=1e-12 * np.abs(random_field.coeffs).max())


def test_parseval(random_field, rng):
    spec = random_field.spec
    other = SpectralField(spec, rng.standard_normal(64) * (np.abs(spec.modes) <= 20))
    physical = spec.dx * np.sum(random_field.samples() * np.conj(other.samples()))
    spectral = np.sum(random_field.coeffs * np.conj(other.coeffs)) / spec.volume
    assert physical == pytest.approx(spectral, rel=1e-10)


def test_coefficients_are_read_only(random_field):
    with pytest.raises(ValueError):
        random_field.coeffs[0] = 1.0


# ---------- norms ----------
def test_lp_norm_constant():
    f = plane_wave(TorusSpec(1.0, 32), 0)
    assert lp_norm(f, 2) == pytest.approx(np.sqrt(2 * np.pi), rel=1e-12)


def test_lp_norm_unimodular_l4():
    f = plane_wave(TorusSpec(1.0, 32), 3)
    assert lp_norm(f, 4) == pytest.approx((2 * np.pi) ** 0.25, rel=1e-12)
    assert lp_norm(f, np.inf) == pytest.approx(1.0, rel=1e-12)


def test_lp_norm_matches_quadrature_oracle():
    spec = TorusSpec(1.0, 64)
    f = plane_wave(spec, 0) + plane_wave(spec, 1)
    x = np.linspace(0.0, 2 * np.pi, 200001)
    oracle = trapezoid(np.abs(1 + np.exp(1j * x)) ** 4, x) ** 0.25
    assert lp_norm(f, 4) == pytest.approx(oracle, rel=1e-8)


def test_lp_norm_rejects_small_p():
    with pytest.raises(LatticeError):
        lp_norm(plane_wave(TorusSpec(1.0, 16), 1), 0.5)


def test_sobolev_norm_single_mode():
    f = plane_wave(TorusSpec(1.0, 32), 3)
    assert sobolev_norm(f, 0) == pytest.approx(np.sqrt(2 * np.pi), rel=1e-12)
    assert sobolev_norm(f, 1) == pytest.approx(np.sqrt(2 * np.pi) * np.sqrt(10), rel=1e-12)


def test_sobolev_zero_is_l2(random_field):
    assert sobolev_norm(random_field, 0) == pytest.approx(lp_norm(random_field, 2), rel=1e-10)
    assert lp_norm(random_field, 2) == pytest.approx(
        np.sqrt(random_field.spec.dx * np.sum(np.abs(random_field.samples()) ** 2)), rel=1e-10
    )


def test_homogeneous_norm_drops_zero_mode():
    spec = TorusSpec(1.0, 32)
    assert sobolev_norm(plane_wave(spec, 0), 0.5, homogeneous=True) == 0.0


# ---------- projections ----------
@pytest.mark.parametrize("m, N, kept", [(3, 4, True), (2, 4, False), (1, 1, True), (-1, 1, True), (0, 1, True)])
def test_dyadic_projection(m, N, kept):
    f = plane_wave(TorusSpec(1.0, 32), m)
    out = project(f, N)
    if kept:
        np.testing.assert_array_equal(out.coeffs, f.coeffs)
    else:
        assert not np.any(out.coeffs)


def test_project_on_intervals():
    spec = TorusSpec(1.0, 32)
    f = plane_wave(spec, 2) + plane_wave(spec, 5)
    out = project(f, [(4.0, 6.0)])
    assert out.support().tolist() == [5]


def test_littlewood_paley_partitions(random_field):
    pieces = littlewood_paley(random_field)
    assert sorted(pieces) == dyadic_scales(random_field.spec)
    total = sum((p.coeffs for p in pieces.values()), np.zeros(64, dtype=np.complex128))
    np.testing.assert_allclose(total, random_field.coeffs)


# ---------- propagator ----------
def test_propagate_identity_at_zero(random_field):
    assert propagate(random_field, 0.0, 0.75) is random_field


def test_propagate_single_mode_phase():
    spec = TorusSpec(1.0, 32)
    f = plane_wave(spec, 2)
    out = propagate(f, 1.0, 0.75)
    assert out.coefficient(2.0) / f.coefficient(2.0) == pytest.approx(np.exp(1j * 2 ** 1.5), abs=1e-12)


def test_propagate_is_unitary(random_field):
    out = propagate(random_field, 0.37, 0.6)
    assert lp_norm(out, 2) == pytest.approx(lp_norm(random_field, 2), rel=1e-12)


@pytest.mark.parametrize("alpha", [0.6, 0.75, 1.0])
def test_propagate_group_property(random_field, alpha):
    twice = propagate(propagate(random_field, 0.2, alpha), 0.3, alpha)
    once = propagate(random_field, 0.5, alpha)
    np.testing.assert_allclose(twice.coeffs, once.coeffs, rtol=0, atol=1e-12)
    back = propagate(once, -0.5, alpha)
    np.testing.assert_allclose(back.coeffs, random_field.coeffs, rtol=0, atol=1e-12)


# ---------- rescaling ----------
def test_rescale_identity_at_lambda_one(random_field):
    out = rescale_down(random_field, 1.0, 0.75)
    np.testing.assert_allclose(out.coeffs, random_field.coeffs)


def test_rescale_single_mode():
    spec = TorusSpec(1.0, 32)
    f = plane_wave(spec, 2)
    out = rescale_down(f, 4.0, 0.75)
    assert out.spec.lam == 4.0
    assert out.support().tolist() == [2]
    assert out.coefficient(0.5) == pytest.approx(f.coefficient(2.0) * 4 ** 0.25, rel=1e-12)


def test_rescale_mass_identity(random_field):
    lam, alpha = 3.0, 0.8
    out = rescale_down(random_field, lam, alpha)
    assert lp_norm(out, 2) ** 2 == pytest.approx(lam ** (1 - 2 * alpha) * lp_norm(random_field, 2) ** 2, rel=1e-10)
    back = rescale_up(out, alpha)
    np.testing.assert_allclose(back.coeffs, random_field.coeffs, rtol=1e-12)


def test_rescale_physical_definition():
    spec = TorusSpec(1.0, 32)
    f = plane_wave(spec, 3, amplitude=0.7)
    lam, alpha = 2.0, 0.75
    out = rescale_down(f, lam, alpha)
    expected = lam ** (-alpha) * 0.7 * np.exp(1j * 3 * out.spec.grid / lam)
    np.testing.assert_allclose(out.samples(), expected, atol=1e-12)


def test_resample_rejects_lost_modes(random_field):
    with pytest.raises(LatticeError):
        resample(random_field, 16)
    finer = resample(random_field, 256)
    assert lp_norm(finer, 2) == pytest.approx(lp_norm(random_field, 2), rel=1e-12)


# ---------- text format ----------
def test_field_text_format(tmp_path, random_field):
    f = SpectralField(TorusSpec(2.5, 16), np.arange(16) * (1 + 0.5j), alpha=0.75)
    text = format_field(f)
    assert text.startswith("# lambda = 2.5\n# num_points = 16\n# alpha = 0.75\n")
    assert "\n-8, " in text
    parsed = parse_field(text)
    np.testing.assert_array_equal(parsed.coeffs, f.coeffs)
    assert parsed.alpha == 0.75

    path = tmp_path / "field.txt"
    write_field(str(path), random_field)
    np.testing.assert_array_equal(read_field(str(path)).coeffs, random_field.coeffs)
    assert not (tmp_path / "field.txt.tmp").exists()


@pytest.mark.parametrize("row", ["8, 1.0, 0.0", "-9, 1.0, 0.0", "40, 0.5, 0.5"])
def test_parse_field_rejects_modes_without_slot(row):
    text = f"# lambda = 1.0\n# num_points = 16\n# m, re, im\n0, 1.0, 0.0\n{row}\n"
    with pytest.raises(LatticeError):
        parse_field(text)


def test_parse_field_keeps_nyquist_slot():
    parsed = parse_field("# lambda = 1.0\n# num_points = 16\n# m, re, im\n-8, 2.0, 0.0\n")
    assert parsed.coeffs[8] == 2.0
    assert np.count_nonzero(parsed.coeffs) == 1
