"""Source-number criteria over eigenvalue-magnitude spectra.

All criteria take an :class:`~sparse_enum.acm.EigSpectrum` (magnitudes sorted
descending) and return a :class:`CriterionCurve` whose ``argmin`` is the
estimated number of sources. Candidate ranges are ``0..P-1`` for MDL,
``1..P-1`` for MDLgap and ``1..P-3`` for SORTE, so only MDL can report zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .acm import EigSpectrum

EIG_FLOOR = 1e-12


@dataclass(frozen=True)
class CriterionCurve:
    name: str
    q: np.ndarray
    values: np.ndarray

    @property
    def argmin(self) -> int:
        # np.argmin returns the first minimum, i.e. the smallest q on ties
        return int(self.q[np.argmin(self.values)])

    @property
    def q_range(self) -> tuple[int, int]:
        return int(self.q[0]), int(self.q[-1])


def _floored(spec: EigSpectrum) -> np.ndarray:
    lam = np.asarray(spec.magnitudes, dtype=float)
    if lam.size < 2:
        raise ValueError("need at least two eigenvalues")
    if spec.effective_snapshots < 1:
        raise ValueError("effective snapshot count must be >= 1")
    if not np.all(lam[:-1] >= lam[1:]):
        raise ValueError("eigenvalue magnitudes must be sorted in descending order")
    if lam[0] <= 0:
        raise ValueError("all-zero eigenvalue spectrum")
    return np.maximum(lam, EIG_FLOOR * lam[0])


def _tail_means(lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Log arithmetic and log geometric means of the ``P-q`` smallest values, q = 0..P-1."""
    P = lam.size
    count = P - np.arange(P)
    tail_sum = np.cumsum(lam[::-1])[::-1]
    tail_log = np.cumsum(np.log(lam)[::-1])[::-1]
    return np.log(tail_sum / count), tail_log / count


def mdl(spec: EigSpectrum) -> CriterionCurve:
    """``MDL(q) = -(P-q) L log(g_q / a_q) + q (2P - q) log(L) / 2`` for q = 0..P-1."""
    lam = _floored(spec)
    P, L = lam.size, spec.effective_snapshots
    q = np.arange(P)
    log_a, log_g = _tail_means(lam)
    values = -(P - q) * L * (log_g - log_a) + 0.5 * q * (2 * P - q) * np.log(L)
    return CriterionCurve("mdl", q, values)


def mdlgap(spec: EigSpectrum) -> CriterionCurve:
    """Snapshot-normalized backward difference of MDL, q = 1..P-1.

    ``-log(a_{q-1}^(P-q+1) / (|lam_q| a_q^(P-q))) + (P - q + 1/2) log(L) / L``
    """
    lam = _floored(spec)
    P, L = lam.size, spec.effective_snapshots
    q = np.arange(1, P)
    log_a, _ = _tail_means(lam)
    values = (
        -(P - q + 1) * log_a[q - 1]
        + np.log(lam[q - 1])
        + (P - q) * log_a[q]
        + (P - q + 0.5) * np.log(L) / L
    )
    return CriterionCurve("mdlgap", q, values)


def sorte(spec: EigSpectrum, include_last: bool = False) -> CriterionCurve:
    """Ratio of trailing eigenvalue-gap variances; ``inf`` on a zero denominator.

    The candidate range is q = 1..P-3 by default. At q = P-2 the numerator is
    the variance of a single gap, which is identically zero, so that point
    would win the argmin for almost every spectrum; ``include_last=True``
    keeps it anyway (q = 1..P-2).
    """
    lam = np.asarray(spec.magnitudes, dtype=float)
    P = lam.size
    if P < 4:
        raise ValueError("SORTE needs at least four eigenvalues")
    gaps = lam[:-1] - lam[1:]
    # population variance of gaps[i:] for every i = 0..P-2
    tail = np.triu(np.ones((P - 1, P - 1), dtype=bool))
    count = tail.sum(axis=1)
    mean = np.where(tail, gaps, 0.0).sum(axis=1) / count
    var = np.where(tail, (gaps - mean[:, None]) ** 2, 0.0).sum(axis=1) / count
    q = np.arange(1, P - 1 if include_last else P - 2)
    num, den = var[q], var[q - 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.inf)
    return CriterionCurve("sorte", q, values)


CRITERIA = {"mdl": mdl, "mdlgap": mdlgap, "sorte": sorte}


def get_criterion(name: str):
    try:
        return CRITERIA[name.lower()]
    except KeyError:
        raise ValueError(f"unknown criterion {name!r}; choose from {sorted(CRITERIA)}") from None


def mean_curve(curves: list[CriterionCurve]) -> CriterionCurve:
    """Pointwise arithmetic mean of curves sharing one candidate range."""
    if not curves:
        raise ValueError("no curves to average")
    first = curves[0]
    if any(c.name != first.name or not np.array_equal(c.q, first.q) for c in curves):
        raise ValueError("curves must share the criterion and candidate range")
    return CriterionCurve(first.name, first.q, np.mean([c.values for c in curves], axis=0))


def h_asymptotic(ensemble_eigs, q: int) -> float:
    """Large-snapshot limit of MDLgap at ``q`` (no penalty term)."""
    ell = np.asarray(ensemble_eigs, dtype=float)
    P = ell.size
    if not 1 <= q <= P - 1:
        raise ValueError(f"q={q} outside 1..{P - 1}")
    if np.any(ell <= 0) or np.any(np.diff(ell) > 0):
        raise ValueError("ensemble eigenvalues must be positive and sorted descending")
    a_prev = ell[q - 1:].mean()
    a_q = ell[q:].mean()
    return float(-((P - q + 1) * np.log(a_prev) - np.log(ell[q - 1]) - (P - q) * np.log(a_q)))


def f_concave(x: float, P: int, D: int, snr: float) -> float:
    """``(P - D + x) log(x SNR / (P - D + x) + 1)`` for ``x >= 0``, ``P > D``."""
    if x < 0 or P <= D or snr < 0:
        raise ValueError("f is defined for x >= 0, P > D and SNR >= 0")
    n = P - D + x
    return float(n * np.log1p(x * snr / n))


def ensemble_eigs(signal_powers, noise_power: float, P: int) -> np.ndarray:
    """Limit eigenvalues ``sigma_i^2 + sigma_n^2`` then ``P - D`` copies of ``sigma_n^2``."""
    s = np.sort(np.asarray(signal_powers, dtype=float))[::-1]
    if s.size >= P:
        raise ValueError("need fewer sources than the ACM dimension")
    return np.concatenate([s + noise_power, np.full(P - s.size, float(noise_power))])
