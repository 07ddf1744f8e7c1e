import numpy as np
import pytest

from sparse_enum.geometry import difference_coarray, nested
from sparse_enum.spectral import (
    NegativePeriodogramError,
    Periodogram,
    SampleCovariance,
    bilinear_periodogram,
    clamp_negative,
    coarray_correlation,
    correlation_from_periodogram,
    narrowband_periodogram,
    scm,
    u_grid,
    wideband_periodogram,
)
from sparse_enum.synth import Scenario, SnapshotTensor, band, synthesize

FC = 100.0


def scenario(geom, u=(0.0, 0.3), freqs=(FC,), L=4, power=1.0, noise=1.0):
    return Scenario(geom, u, power, noise, freqs, FC, L)


def tensor_from(geom, X, freqs=(FC,)):
    """Wrap explicit N x M x L data in a SnapshotTensor with half-wavelength spacing."""
    sc = scenario(geom, freqs=freqs, L=1)
    return SnapshotTensor(np.asarray(X, dtype=complex), tuple(freqs), geom, sc.spacing, sc.prop_speed)


def direct_lag_average(R, positions, k):
    """Reference: loop over every sensor pair."""
    vals = [R[a, b] for a in range(len(positions)) for b in range(len(positions)) if positions[a] - positions[b] == k]
    return np.mean(vals)


def test_u_grid():
    g = u_grid(8)
    np.testing.assert_allclose(g, [-1, -0.75, -0.5, -0.25, 0, 0.25, 0.5, 0.75])


def test_scm_single_snapshot_is_outer_product(mra):
    x = synthesize(scenario(mra, L=1), 0)
    v = x.bin(0)[:, 0]
    R = scm(x, 0)
    np.testing.assert_allclose(R.matrix, np.outer(v, v.conj()))
    assert np.linalg.matrix_rank(R.matrix) == 1
    assert R.snapshot_count == 1 and R.freq == FC


def test_scm_hermitian_psd_and_trace(mra):
    x = synthesize(scenario(mra, L=7), 1)
    R = scm(x, 0).matrix
    np.testing.assert_allclose(R, R.conj().T)
    assert np.linalg.eigvalsh(R).min() >= -1e-12 * np.trace(R).real
    energy = np.mean(np.sum(np.abs(x.bin(0)) ** 2, axis=0))
    assert np.trace(R).real == pytest.approx(energy)


def test_scm_noise_only_diagonal(mra):
    x = synthesize(scenario(mra, u=(0.0,), power=1e-12, noise=2.0, L=10_000), 2)
    d = np.diag(scm(x, 0).matrix).real
    np.testing.assert_allclose(d, 2.0, rtol=0.05)


def test_coarray_correlation_white(mra_coarray):
    r = coarray_correlation(np.eye(6), mra_coarray)
    expected = np.zeros(27)
    expected[13] = 1
    np.testing.assert_allclose(r.values, expected, atol=1e-15)


def test_coarray_correlation_single_source_ensemble(mra, mra_coarray):
    sigma2, noise, u0 = 1.7, 0.4, 0.23
    v = np.exp(-1j * np.pi * np.array(mra.positions) * u0)
    R = sigma2 * np.outer(v, v.conj()) + noise * np.eye(6)
    r = coarray_correlation(R, mra_coarray)
    k = np.arange(-13, 14)
    # R[n1, n2] = sigma2 exp(-j pi (p1 - p2) u0); every pair at lag k shares the phase
    expected = sigma2 * np.exp(-1j * np.pi * k * u0) + noise * (k == 0)
    np.testing.assert_allclose(r.values, expected, atol=1e-12)


def test_coarray_correlation_matches_pair_loop(mra, mra_coarray, rng):
    X = rng.standard_normal((6, 5)) + 1j * rng.standard_normal((6, 5))
    R = X @ X.conj().T / 5
    r = coarray_correlation(R, mra_coarray)
    for k in range(-13, 14):
        assert r.at(k) == pytest.approx(direct_lag_average(R, mra.positions, k))
    # lag 13 comes only from the sensors at 14 and 1
    assert r.at(13) == R[5, 0]
    np.testing.assert_allclose(r.values[::-1], r.values.conj())


def test_periodogram_single_source_peak(mra):
    u0 = 0.25  # on the 256-point grid
    v = np.exp(-1j * np.pi * np.array(mra.positions) * u0)
    x = tensor_from(mra, v[:, None, None])
    p = narrowband_periodogram(x, 0, u_grid(256))
    assert p.values[np.argmin(np.abs(p.u_grid - u0))] == pytest.approx(36.0)
    assert p.values.max() == pytest.approx(36.0)
    assert np.all(p.values >= 0)


def test_periodogram_noise_ensemble_is_flat(mra):
    x = tensor_from(mra, np.zeros((6, 1, 1)))
    cov = SampleCovariance(0.8 * np.eye(6), 1, FC)
    p = bilinear_periodogram(cov, x)
    np.testing.assert_allclose(p.values, 0.8 * 6)


@pytest.mark.parametrize("f", [FC, 83.0, 117.0])
def test_beamformer_bilinear_identity(mra, f):
    x = synthesize(scenario(mra, freqs=(f,), L=6), 3)
    direct = narrowband_periodogram(x, 0).values
    quad = bilinear_periodogram(scm(x, 0), x).values
    np.testing.assert_allclose(quad, direct, rtol=1e-10)


def test_wideband_single_bin_equals_narrowband(mra):
    x = synthesize(scenario(mra, L=3), 4)
    np.testing.assert_array_equal(wideband_periodogram(x).values, narrowband_periodogram(x, 0).values)


def test_wideband_identical_bins(mra):
    x = synthesize(scenario(mra, L=3), 5)
    doubled = tensor_from(mra, np.repeat(x.data, 2, axis=1), freqs=(FC, FC))
    np.testing.assert_allclose(wideband_periodogram(doubled).values, narrowband_periodogram(x, 0).values, rtol=1e-12)


def test_wideband_broadside_peak(mra):
    freqs = band()
    x = tensor_from(mra, np.ones((6, 41, 1)), freqs=freqs)
    p = wideband_periodogram(x)
    assert p.u_grid[np.argmax(p.values)] == 0.0
    assert p.values.max() == pytest.approx(36.0)


def test_wideband_is_mean_of_bins(mra):
    x = synthesize(scenario(mra, freqs=(90.0, 100.0, 110.0), L=2), 6)
    mean = np.mean([narrowband_periodogram(x, m).values for m in range(3)], axis=0)
    np.testing.assert_allclose(wideband_periodogram(x).values, mean, rtol=1e-12)


def test_flat_periodogram_inverts_to_dc(mra_coarray):
    grid = u_grid(64)
    r = correlation_from_periodogram(Periodogram(grid, np.full(64, 3.0)), mra_coarray)
    assert r.at(0) == pytest.approx(3.0 / 6)
    np.testing.assert_allclose(np.delete(r.values, 13), 0, atol=1e-12)


@pytest.mark.parametrize("n_grid", [27, 64, 256])
def test_narrowband_oracle(mra, mra_coarray, n_grid):
    for seed in range(5):
        x = synthesize(scenario(mra, u=(0.1, -0.45, 0.6), L=3), seed)
        via_t = correlation_from_periodogram(narrowband_periodogram(x, 0, u_grid(n_grid)), mra_coarray)
        direct = coarray_correlation(scm(x, 0), mra_coarray)
        err = np.linalg.norm(via_t.values - direct.values) / np.linalg.norm(direct.values)
        assert err < 1e-10


def test_narrowband_oracle_with_holes():
    geom = nested(2, 3)
    co = difference_coarray(geom)
    x = synthesize(scenario(geom, L=3), 0)
    via_t = correlation_from_periodogram(narrowband_periodogram(x, 0, u_grid(2 * co.max_lag + 1)), co)
    direct = coarray_correlation(scm(x, 0), co)
    np.testing.assert_allclose(via_t.values, direct.values, rtol=1e-10, atol=1e-12)


def test_parseval_and_symmetry(mra, mra_coarray):
    x = synthesize(scenario(mra, freqs=band(), L=2), 8)
    t = wideband_periodogram(x)
    r = correlation_from_periodogram(t, mra_coarray)
    assert r.at(0).real == pytest.approx(t.values.mean() / 6)
    assert r.at(0).imag == 0
    np.testing.assert_allclose(r.values[::-1], r.values.conj(), atol=1e-14)


def test_grid_too_coarse(mra, mra_coarray):
    x = synthesize(scenario(mra, L=1), 0)
    with pytest.raises(ValueError):
        narrowband_periodogram(x, 0, u_grid(26))
    with pytest.raises(ValueError):
        correlation_from_periodogram(Periodogram(u_grid(26), np.ones(26)), mra_coarray)


def test_clamp_negative():
    np.testing.assert_array_equal(clamp_negative(np.array([1.0, -1e-14, 2.0])), [1.0, 0.0, 2.0])
    with pytest.raises(NegativePeriodogramError):
        clamp_negative(np.array([1.0, -1e-6]))
