"""Frequency-domain snapshot synthesis for wideband planewave sources.

Each DFT bin is drawn independently: ``x_l(f_m) = A(f_m) s_l(f_m) + n_l(f_m)``
with circular complex Gaussian sources and white noise. Bin ``m`` of a
realization uses its own random stream derived from ``(seed, m)``, so bins
may be generated in any order or in parallel with identical results.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .geometry import ArrayGeometry

SOUND_SPEED = 1500.0


@dataclass(frozen=True)
class Scenario:
    """Sources, noise, band and snapshot budget for one simulated realization.

    ``source_power`` and ``noise_power`` are linear variances per frequency
    bin; the per-sensor SNR of source ``i`` is ``source_power[i] / noise_power``.
    """

    geometry: ArrayGeometry
    source_u: tuple[float, ...]
    source_power: tuple[float, ...]
    noise_power: float
    freqs: tuple[float, ...]
    center_freq: float
    snapshots: int
    prop_speed: float = SOUND_SPEED

    def __post_init__(self):
        u = tuple(float(v) for v in self.source_u)
        power = tuple(float(v) for v in np.broadcast_to(self.source_power, len(u)))
        freqs = tuple(float(f) for f in np.atleast_1d(self.freqs))
        object.__setattr__(self, "source_u", u)
        object.__setattr__(self, "source_power", power)
        object.__setattr__(self, "freqs", freqs)
        if any(abs(v) > 1 for v in u):
            raise ValueError("directional cosines must lie in [-1, 1]")
        if len(set(u)) != len(u):
            raise ValueError("source directions must be distinct")
        if any(p <= 0 for p in power):
            raise ValueError("source powers must be positive")
        if not self.noise_power > 0:
            raise ValueError("noise power must be positive")
        if not freqs or any(f <= 0 for f in freqs):
            raise ValueError("need at least one positive frequency")
        if not self.center_freq > 0 or not self.prop_speed > 0:
            raise ValueError("center frequency and propagation speed must be positive")
        if int(self.snapshots) != self.snapshots or self.snapshots < 1:
            raise ValueError("snapshots must be a positive integer")

    @property
    def n_sources(self) -> int:
        return len(self.source_u)

    @property
    def n_bins(self) -> int:
        return len(self.freqs)

    @property
    def spacing(self) -> float:
        """Fundamental spacing in meters (half a wavelength at ``center_freq`` unless fixed)."""
        if self.geometry.spacing_d is not None:
            return self.geometry.spacing_d
        return self.prop_speed / (2 * self.center_freq)

    def manifold(self, f: float, u) -> np.ndarray:
        return manifold(self.geometry, f, u, spacing=self.spacing, c=self.prop_speed)

    def replace(self, **changes) -> Scenario:
        return replace(self, **changes)

    def with_snr_db(self, snr_db: float) -> Scenario:
        """All sources at the same per-sensor SNR relative to the current noise power."""
        power = self.noise_power * 10 ** (snr_db / 10)
        return replace(self, source_power=(power,) * self.n_sources)

    def narrowband_equivalent(self) -> Scenario:
        """Single bin at ``center_freq`` carrying the full ``M * L`` snapshot budget."""
        return replace(self, freqs=(self.center_freq,), snapshots=self.n_bins * self.snapshots)


@dataclass(frozen=True)
class SnapshotTensor:
    """Complex phasors indexed ``(sensor n, bin m, snapshot l)``."""

    data: np.ndarray
    freqs: tuple[float, ...]
    geometry: ArrayGeometry
    spacing: float
    prop_speed: float

    def __post_init__(self):
        if self.data.ndim != 3:
            raise ValueError("snapshot data must be 3-D (sensor, bin, snapshot)")
        N, M, _ = self.data.shape
        if N != self.geometry.n_sensors or M != len(self.freqs):
            raise ValueError(
                f"data shape {self.data.shape} does not match "
                f"{self.geometry.n_sensors} sensors x {len(self.freqs)} bins"
            )

    @property
    def n_sensors(self) -> int:
        return self.data.shape[0]

    @property
    def n_bins(self) -> int:
        return self.data.shape[1]

    @property
    def n_snapshots(self) -> int:
        return self.data.shape[2]

    def bin(self, m: int) -> np.ndarray:
        """``N x L`` snapshot matrix of bin ``m``."""
        return self.data[:, m, :]

    def manifold(self, f: float, u) -> np.ndarray:
        return manifold(self.geometry, f, u, spacing=self.spacing, c=self.prop_speed)


def manifold(geometry: ArrayGeometry, f: float, u, *, spacing: float, c: float = SOUND_SPEED) -> np.ndarray:
    """Array manifold ``exp(-j 2 pi f d_n u / c)``.

    Args:
        geometry: Sensor layout on the integer grid.
        f: Temporal frequency in Hz.
        u: Directional cosine, scalar or 1-D array.
        spacing: Fundamental spacing ``d`` in meters.
        c: Propagation speed in m/s.

    Returns:
        Length-``N`` vector for scalar ``u``, otherwise an ``N x len(u)`` matrix.
    """
    u_arr = np.asarray(u, dtype=float)
    if np.any(np.abs(u_arr) > 1):
        raise ValueError("directional cosine outside the visible region [-1, 1]")
    if not f > 0:
        raise ValueError("frequency must be positive")
    d_n = geometry.as_array() * spacing
    phase = np.multiply.outer(2 * np.pi * f * d_n / c, u_arr)
    return np.exp(-1j * phase)


def bin_seed(seed, m: int) -> np.random.SeedSequence:
    """Independent stream for bin ``m`` of the realization keyed by ``seed``."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=(*seed.spawn_key, m))
    return np.random.SeedSequence(seed, spawn_key=(m,))


def _cn(rng: np.random.Generator, shape, power) -> np.ndarray:
    # CN(0, power): real and imaginary parts each N(0, power / 2)
    scale = np.sqrt(np.asarray(power, dtype=float) / 2)
    z = rng.standard_normal((*shape, 2))
    return scale * (z[..., 0] + 1j * z[..., 1])


def synthesize(scenario: Scenario, seed) -> SnapshotTensor:
    """Draw one realization of ``scenario``.

    ``seed`` is an integer or a :class:`numpy.random.SeedSequence`; the same
    value always reproduces bit-identical data.
    """
    N, M, L, D = scenario.geometry.n_sensors, scenario.n_bins, scenario.snapshots, scenario.n_sources
    power = np.asarray(scenario.source_power)[:, None]
    data = np.empty((N, M, L), dtype=complex)
    for m, f in enumerate(scenario.freqs):
        rng = np.random.default_rng(bin_seed(seed, m))
        s = _cn(rng, (D, L), power)
        noise = _cn(rng, (N, L), scenario.noise_power)
        A = scenario.manifold(f, np.asarray(scenario.source_u))
        data[:, m, :] = A @ s + noise
    return SnapshotTensor(data, scenario.freqs, scenario.geometry, scenario.spacing, scenario.prop_speed)


def band(f_lo: float = 80.0, f_hi: float = 120.0, bins: int = 41) -> tuple[float, ...]:
    """Evenly spaced bin frequencies covering ``[f_lo, f_hi]`` inclusive."""
    if bins < 1:
        raise ValueError("need at least one bin")
    if bins == 1:
        return (0.5 * (f_lo + f_hi),)
    return tuple(np.linspace(f_lo, f_hi, bins))


def uniform_points(lo: float, hi: float, count: int, *, include: str = "right") -> np.ndarray:
    """``count`` evenly spaced points in an interval with one open end.

    ``include="right"`` gives ``lo + (hi - lo) * k / count`` for ``k = 1..count``
    (the half-open interval ``(lo, hi]``); ``"left"`` gives ``k = 0..count-1``;
    ``"interior"`` keeps both ends open with ``k / (count + 1)`` spacing.
    """
    k = np.arange(1, count + 1)
    if include == "right":
        frac = k / count
    elif include == "left":
        frac = (k - 1) / count
    elif include == "interior":
        frac = k / (count + 1)
    else:
        raise ValueError(f"unknown endpoint convention {include!r}")
    return lo + (hi - lo) * frac


def nine_source_u(include: str = "right") -> tuple[float, ...]:
    """Directions of the underdetermined nine-source layout on the MRA.

    One source at broadside, four evenly spaced in angle over (90, 135]
    degrees and four evenly spaced in directional cosine over (0, 0.7].
    """
    theta = uniform_points(90.0, 135.0, 4, include=include)
    u_angle = np.cos(np.deg2rad(theta))
    u_cos = uniform_points(0.0, 0.7, 4, include=include)
    return tuple(float(v) for v in np.concatenate([[0.0], u_angle, u_cos]))
