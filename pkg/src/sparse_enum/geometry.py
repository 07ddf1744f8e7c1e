"""Sparse linear array geometries and their difference coarrays.

Sensor positions are integers in units of the fundamental spacing ``d``; the
physical spacing only enters through the array manifold phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    """Linear array on an integer grid.

    Args:
        positions: Strictly increasing non-negative integer sensor locations,
            in multiples of the fundamental spacing.
        spacing_d: Fundamental spacing in meters. ``None`` means "half a
            wavelength at the scenario's center frequency".
        name: Optional label used in reports.
    """

    positions: tuple[int, ...]
    spacing_d: float | None = None
    name: str = ""

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        if any(int(p) != p for p in self.positions):
            raise ValueError("positions must be integers")
        if len(pos) < 2:
            raise ValueError("a geometry needs at least two sensors")
        if pos[0] < 0:
            raise ValueError("positions must be non-negative")
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("positions must be strictly increasing")
        if self.spacing_d is not None and not self.spacing_d > 0:
            raise ValueError("spacing_d must be positive")
        object.__setattr__(self, "positions", pos)

    @property
    def n_sensors(self) -> int:
        return len(self.positions)

    @property
    def aperture(self) -> int:
        return self.positions[-1] - self.positions[0]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.positions, dtype=float)

    def with_spacing(self, spacing_d: float) -> ArrayGeometry:
        return ArrayGeometry(self.positions, spacing_d, self.name)


@dataclass(frozen=True)
class Coarray:
    """Difference coarray of an :class:`ArrayGeometry`.

    ``lag_pairs[k]`` lists the ordered sensor-index pairs ``(n1, n2)``
    (0-based) with ``positions[n1] - positions[n2] == k``; ``weights[k]`` is
    the number of such pairs. Only realizable lags are present.
    """

    geometry: ArrayGeometry
    lag_pairs: dict[int, tuple[tuple[int, int], ...]] = field(repr=False)
    weights: dict[int, int]
    contiguous_P: int

    @property
    def lags(self) -> np.ndarray:
        """All realizable lags, sorted."""
        return np.array(sorted(self.weights), dtype=int)

    @property
    def max_lag(self) -> int:
        return max(self.weights)

    @property
    def contiguous_lags(self) -> np.ndarray:
        """Lags ``1-P .. P-1`` of the central contiguous run."""
        P = self.contiguous_P
        return np.arange(1 - P, P)

    def weight(self, k: int) -> int:
        return self.weights.get(int(k), 0)

    def contiguous_weights(self) -> np.ndarray:
        return np.array([self.weights[k] for k in self.contiguous_lags], dtype=int)

    @cached_property
    def averaging_matrix(self) -> np.ndarray:
        """``(2P-1) x N^2`` matrix mapping a row-major flattened covariance to
        its per-lag pair averages over the contiguous run."""
        N = self.geometry.n_sensors
        lags = self.contiguous_lags
        T = np.zeros((lags.size, N * N))
        for i, k in enumerate(lags):
            rows, cols = self.pair_index(k)
            T[i, rows * N + cols] = 1.0 / rows.size
        T.setflags(write=False)
        return T

    def pair_index(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Row and column index arrays of the pairs in ``lag_pairs[k]``."""
        pairs = self.lag_pairs.get(int(k), ())
        if not pairs:
            return np.empty(0, dtype=int), np.empty(0, dtype=int)
        rows, cols = zip(*pairs)
        return np.array(rows, dtype=int), np.array(cols, dtype=int)


def difference_coarray(geometry: ArrayGeometry) -> Coarray:
    """Enumerate every ordered sensor pair by lag and find the contiguous extent."""
    pos = geometry.positions
    pairs: dict[int, list[tuple[int, int]]] = {}
    for n1, p1 in enumerate(pos):
        for n2, p2 in enumerate(pos):
            pairs.setdefault(p1 - p2, []).append((n1, n2))
    lag_pairs = {k: tuple(v) for k, v in sorted(pairs.items())}
    weights = {k: len(v) for k, v in lag_pairs.items()}
    P = 1
    while P in weights:
        P += 1
    return Coarray(geometry, lag_pairs, weights, P)


def mra6() -> ArrayGeometry:
    """Six-sensor minimum redundancy array at ``[1, 2, 5, 6, 12, 14] d``."""
    return ArrayGeometry((1, 2, 5, 6, 12, 14), name="mra6")


def nested(n1: int, n2: int) -> ArrayGeometry:
    """Two-level nested array: a dense ULA of ``n1`` plus ``n2`` sparse sensors."""
    if n1 < 1 or n2 < 1:
        raise ValueError("nested array levels must be >= 1")
    inner = list(range(1, n1 + 1))
    outer = [(n1 + 1) * j for j in range(1, n2 + 1)]
    return ArrayGeometry(tuple(sorted(set(inner + outer))), name=f"nested:{n1},{n2}")


def coprime(a: int, b: int) -> ArrayGeometry:
    """Extended coprime array: ``{a*i : i < b}`` union ``{b*j : j < 2a}``."""
    if a < 2 or b < 2:
        raise ValueError("coprime factors must be >= 2")
    if gcd(a, b) != 1:
        raise ValueError(f"{a} and {b} are not coprime")
    first = {a * i for i in range(b)}
    second = {b * j for j in range(2 * a)}
    return ArrayGeometry(tuple(sorted(first | second)), name=f"coprime:{a},{b}")


def parse_geometry(spec: str | list | tuple) -> ArrayGeometry:
    """Build a geometry from a preset name or an explicit position list.

    Accepted forms: ``"mra6"``, ``"nested:n1,n2"``, ``"coprime:a,b"``, a
    comma-separated string of integers, or a sequence of integers.
    """
    if isinstance(spec, (list, tuple)):
        return ArrayGeometry(tuple(spec))
    text = spec.strip().lower()
    if text == "mra6":
        return mra6()
    for prefix, ctor in (("nested:", nested), ("coprime:", coprime)):
        if text.startswith(prefix):
            args = [int(v) for v in text[len(prefix):].split(",")]
            if len(args) != 2:
                raise ValueError(f"{prefix[:-1]} preset needs two integers: {spec!r}")
            return ctor(*args)
    try:
        values = [int(v) for v in text.strip("[]").split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"unrecognized geometry {spec!r}") from None
    return ArrayGeometry(tuple(values))
