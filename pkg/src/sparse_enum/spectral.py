"""Sample covariances, spatial periodograms and coarray correlation estimates.

Two routes lead to the coarray correlation sequence ``r(k)``:

* direct: average sample-covariance entries over the sensor pairs of each lag;
* periodogram: beamform every bin with unnormalized steering vectors, average
  the periodograms over snapshots and bins, then take the inverse spatial
  Fourier transform on the ``u`` grid and divide by the coarray weights.

With unnormalized weights the narrowband periodogram at the design frequency
is ``t(u) = sum_k eta(k) r(k) exp(j pi k u)``, so on a grid of at least
``2 * max_lag + 1`` points the two routes agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import Coarray
from .synth import SnapshotTensor, manifold

DEFAULT_GRID = 256
NEGATIVE_TOL = 1e-12


@dataclass(frozen=True)
class SampleCovariance:
    matrix: np.ndarray
    snapshot_count: int
    freq: float


@dataclass(frozen=True)
class Periodogram:
    u_grid: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class CorrelationVector:
    """Correlation estimates at lags ``-(P-1) .. P-1`` stored in that order."""

    values: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 1 or self.values.size % 2 == 0:
            raise ValueError("correlation vector needs odd length 2P-1")

    @property
    def P(self) -> int:
        return (self.values.size + 1) // 2

    @property
    def lags(self) -> np.ndarray:
        return np.arange(1 - self.P, self.P)

    def at(self, k: int) -> complex:
        return self.values[k + self.P - 1]


class NegativePeriodogramError(ArithmeticError):
    """A periodogram value fell below the rounding floor."""


def u_grid(n_points: int = DEFAULT_GRID) -> np.ndarray:
    """Uniform directional-cosine grid ``u_g = -1 + 2 g / Ng`` on ``[-1, 1)``."""
    if n_points < 1:
        raise ValueError("grid needs at least one point")
    return -1.0 + 2.0 * np.arange(n_points) / n_points


def scm(snapshots: SnapshotTensor, m: int) -> SampleCovariance:
    X = snapshots.bin(m)
    L = X.shape[1]
    R = X @ X.conj().T / L
    return SampleCovariance(R, L, snapshots.freqs[m])


def coarray_correlation(cov: SampleCovariance | np.ndarray, coarray: Coarray) -> CorrelationVector:
    """Average covariance entries over the sensor pairs of every contiguous lag."""
    R = cov.matrix if isinstance(cov, SampleCovariance) else np.asarray(cov)
    N = coarray.geometry.n_sensors
    if R.shape != (N, N):
        raise ValueError("covariance size does not match the coarray geometry")
    return CorrelationVector(coarray.averaging_matrix @ R.reshape(N * N))


def scm_stack(snapshots: SnapshotTensor) -> np.ndarray:
    """Sample covariances of all bins, shape ``(M, N, N)``."""
    X = np.moveaxis(snapshots.data, 1, 0)
    return X @ X.conj().transpose(0, 2, 1) / snapshots.n_snapshots


def coarray_correlation_stack(R: np.ndarray, coarray: Coarray) -> np.ndarray:
    """Per-bin coarray correlations of an ``(M, N, N)`` stack, shape ``(M, 2P-1)``."""
    M, N, _ = R.shape
    return R.reshape(M, N * N) @ coarray.averaging_matrix.T


@lru_cache(maxsize=64)
def _steering_stack(positions, spacing, c, freqs, n_grid) -> np.ndarray:
    from .geometry import ArrayGeometry

    geom = ArrayGeometry(positions)
    grid = u_grid(n_grid)
    W = np.stack([manifold(geom, f, grid, spacing=spacing, c=c) for f in freqs], axis=1)
    W.setflags(write=False)
    return W


def steering_stack(snapshots: SnapshotTensor, grid: np.ndarray) -> np.ndarray:
    """Steering vectors for every bin on ``grid``, shape ``(N, M, Ng)``."""
    grid = np.asarray(grid, dtype=float)
    n = grid.size
    if np.allclose(grid, u_grid(n), rtol=0, atol=0):
        return _steering_stack(
            snapshots.geometry.positions, snapshots.spacing, snapshots.prop_speed, snapshots.freqs, n
        )
    return np.stack([snapshots.manifold(f, grid) for f in snapshots.freqs], axis=1)


def _check_grid(grid: np.ndarray, min_points: int):
    if grid.size < min_points:
        raise ValueError(f"u grid has {grid.size} points, need at least {min_points}")


def clamp_negative(values: np.ndarray) -> np.ndarray:
    """Zero tiny negative rounding residue; raise on anything larger."""
    values = np.real(values).astype(float, copy=True)
    floor = -NEGATIVE_TOL * max(float(np.max(np.abs(values), initial=0.0)), np.finfo(float).tiny)
    if np.any(values < floor):
        raise NegativePeriodogramError(f"periodogram minimum {values.min():.3e} below {floor:.3e}")
    np.maximum(values, 0.0, out=values)
    return values


def narrowband_periodogram(snapshots: SnapshotTensor, m: int, grid: np.ndarray | None = None) -> Periodogram:
    """Snapshot-averaged conventional beamformer power of bin ``m``."""
    grid = u_grid() if grid is None else np.asarray(grid, dtype=float)
    _check_grid(grid, 2 * snapshots.geometry.aperture + 1)
    W = snapshots.manifold(snapshots.freqs[m], grid)
    Y = W.conj().T @ snapshots.bin(m)
    t = np.mean(np.abs(Y) ** 2, axis=1)
    return Periodogram(grid, clamp_negative(t))


def bilinear_periodogram(cov: SampleCovariance, snapshots: SnapshotTensor, grid: np.ndarray | None = None) -> Periodogram:
    """Same spectrum as :func:`narrowband_periodogram`, evaluated as ``w^H R w``."""
    grid = u_grid() if grid is None else np.asarray(grid, dtype=float)
    W = snapshots.manifold(cov.freq, grid)
    t = np.einsum("ng,nk,kg->g", W.conj(), cov.matrix, W)
    return Periodogram(grid, clamp_negative(t))


def wideband_periodogram(snapshots: SnapshotTensor, grid: np.ndarray | None = None) -> Periodogram:
    """Mean of the narrowband periodograms over all bins and snapshots."""
    grid = u_grid() if grid is None else np.asarray(grid, dtype=float)
    _check_grid(grid, 2 * snapshots.geometry.aperture + 1)
    WH = steering_stack(snapshots, grid).conj().transpose(1, 2, 0)
    Y = WH @ np.moveaxis(snapshots.data, 1, 0)
    per_bin = np.mean(np.abs(Y) ** 2, axis=2)
    return Periodogram(grid, clamp_negative(np.mean(per_bin, axis=0)))


@lru_cache(maxsize=64)
def _inverse_kernel(P: int, n_grid: int) -> np.ndarray:
    lags = np.arange(1 - P, P)
    K = np.exp(-1j * np.pi * np.outer(lags, u_grid(n_grid))) / n_grid
    K.setflags(write=False)
    return K


def correlation_from_periodogram(p: Periodogram, coarray: Coarray) -> CorrelationVector:
    """Inverse spatial Fourier transform of ``p`` normalized by the coarray weights."""
    P = coarray.contiguous_P
    n = p.u_grid.size
    _check_grid(p.u_grid, 2 * (P - 1) + 1)
    if np.allclose(p.u_grid, u_grid(n), rtol=0, atol=0):
        K = _inverse_kernel(P, n)
    else:
        K = np.exp(-1j * np.pi * np.outer(coarray.contiguous_lags, p.u_grid)) / n
    r = K @ p.values / coarray.contiguous_weights()
    return CorrelationVector(r)
