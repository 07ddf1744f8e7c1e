"""Augmented covariance matrices built from coarray correlation vectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .spectral import CorrelationVector


class EigenDecompositionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class AugmentedCovariance:
    matrix: np.ndarray
    kind: str
    source_P: int


@dataclass(frozen=True)
class EigSpectrum:
    """Eigenvalue magnitudes sorted descending, with the snapshot count the criteria should use."""

    magnitudes: np.ndarray
    effective_snapshots: int

    @property
    def P(self) -> int:
        return self.magnitudes.size


def ss_acm(r: CorrelationVector) -> AugmentedCovariance:
    """Spatially smoothed ACM: mean outer product of the ``P`` sliding subvectors.

    Subvector ``i`` (1-based) holds entries ``P-i+1 .. 2P-i`` of the correlation
    vector, i.e. lags ``1-i .. P-i``.
    """
    P = r.P
    z = r.values
    V = np.stack([z[P - i: 2 * P - i] for i in range(1, P + 1)], axis=1)
    return AugmentedCovariance(V @ V.conj().T / P, "ss", P)


def lra_acm(r: CorrelationVector) -> AugmentedCovariance:
    """Hermitian Toeplitz ACM with ``R[i, j] = r(i - j)``; not necessarily PSD."""
    P = r.P
    z = r.values
    column = z[P - 1:]
    row = z[P - 1::-1]
    return AugmentedCovariance(scipy.linalg.toeplitz(column, row), "lra", P)


def ss_acm_stack(r: np.ndarray) -> np.ndarray:
    """SS ACMs of an ``(M, 2P-1)`` stack of correlation vectors, shape ``(M, P, P)``."""
    P = (r.shape[1] + 1) // 2
    V = np.stack([r[:, P - i: 2 * P - i] for i in range(1, P + 1)], axis=2)
    return V @ V.conj().transpose(0, 2, 1) / P


def lra_acm_stack(r: np.ndarray) -> np.ndarray:
    """LRA ACMs of an ``(M, 2P-1)`` stack of correlation vectors, shape ``(M, P, P)``."""
    P = (r.shape[1] + 1) // 2
    idx = P - 1 + np.subtract.outer(np.arange(P), np.arange(P))
    return r[:, idx]


def build_acm(r: CorrelationVector, kind: str) -> AugmentedCovariance:
    if kind == "lra":
        return lra_acm(r)
    if kind == "ss":
        return ss_acm(r)
    raise ValueError(f"unknown ACM kind {kind!r}; expected 'lra' or 'ss'")


def eig_magnitudes_stack(R: np.ndarray, effective_snapshots: int) -> list[EigSpectrum]:
    """:func:`eig_magnitudes` over an ``(M, P, P)`` stack of Hermitian ACMs."""
    if not np.all(np.isfinite(R)):
        raise EigenDecompositionError("ACM contains non-finite entries")
    try:
        lam = np.linalg.eigvalsh(R)
    except np.linalg.LinAlgError as exc:
        raise EigenDecompositionError(str(exc)) from exc
    if not np.all(np.isfinite(lam)):
        raise EigenDecompositionError("eigensolver returned non-finite values")
    mags = np.sort(np.abs(lam), axis=1)[:, ::-1]
    return [EigSpectrum(row, int(effective_snapshots)) for row in mags]


def eig_magnitudes(acm: AugmentedCovariance | np.ndarray, effective_snapshots: int) -> EigSpectrum:
    """Magnitudes of the (real) eigenvalues of a Hermitian ACM, largest first."""
    R = acm.matrix if isinstance(acm, AugmentedCovariance) else np.asarray(acm)
    if not np.all(np.isfinite(R)):
        raise EigenDecompositionError("ACM contains non-finite entries")
    try:
        lam = np.linalg.eigvalsh(R)
    except np.linalg.LinAlgError as exc:
        raise EigenDecompositionError(str(exc)) from exc
    if not np.all(np.isfinite(lam)):
        raise EigenDecompositionError("eigensolver returned non-finite values")
    return EigSpectrum(np.sort(np.abs(lam))[::-1], int(effective_snapshots))
