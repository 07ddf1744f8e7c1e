"""End-to-end enumeration strategies.

``ap``
    Average the spatial periodograms of all bins, invert to a coarray
    correlation, build the LRA ACM, apply the criterion once.
``iss``
    Per bin: SCM, direct coarray correlation, SS ACM and criterion curve; the
    curves are averaged over bins before taking the argmin.
``nb``
    Single bin at the center frequency with the whole ``M * L`` snapshot
    budget, direct coarray correlation and LRA ACM.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .acm import EigSpectrum, build_acm, eig_magnitudes, eig_magnitudes_stack, lra_acm_stack, ss_acm_stack
from .criteria import CriterionCurve, get_criterion, mean_curve
from .geometry import Coarray, difference_coarray
from .spectral import (
    DEFAULT_GRID,
    coarray_correlation,
    coarray_correlation_stack,
    correlation_from_periodogram,
    scm,
    scm_stack,
    u_grid,
    wideband_periodogram,
)
from .synth import SnapshotTensor

STRATEGIES = ("ap", "iss", "nb")
DEFAULT_ACM = {"ap": "lra", "iss": "ss", "nb": "lra"}


@dataclass(frozen=True)
class ProcessingOptions:
    """Knobs shared by the strategies.

    Args:
        n_grid: Number of points on the ``u`` grid used by AP.
        acm: ``"default"`` (LRA for AP/NB, SS for ISS), ``"lra"`` or ``"ss"``.
        criterion_snapshots: ``"total"`` feeds ``M * L`` to the AP criteria,
            ``"per_bin"`` feeds ``L``.
    """

    n_grid: int = DEFAULT_GRID
    acm: str = "default"
    criterion_snapshots: str = "total"

    def __post_init__(self):
        if self.acm not in ("default", "lra", "ss"):
            raise ValueError(f"unknown acm option {self.acm!r}")
        if self.criterion_snapshots not in ("total", "per_bin"):
            raise ValueError(f"unknown criterion_snapshots option {self.criterion_snapshots!r}")

    def acm_for(self, strategy: str) -> str:
        return DEFAULT_ACM[strategy] if self.acm == "default" else self.acm


@dataclass
class EnumerationResult:
    strategy: str
    criterion: str
    estimate: int
    curve: CriterionCurve
    effective_snapshots: int
    bin_curves: list[CriterionCurve] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "criterion": self.criterion,
            "estimate": self.estimate,
            "effective_snapshots": self.effective_snapshots,
            "q": self.curve.q.tolist(),
            "values": [v if np.isfinite(v) else None for v in self.curve.values.tolist()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _coarray(snapshots: SnapshotTensor, coarray: Coarray | None) -> Coarray:
    return coarray if coarray is not None else difference_coarray(snapshots.geometry)


def ap_spectrum(snapshots: SnapshotTensor, options: ProcessingOptions = ProcessingOptions(),
                coarray: Coarray | None = None) -> EigSpectrum:
    co = _coarray(snapshots, coarray)
    t = wideband_periodogram(snapshots, u_grid(options.n_grid))
    r = correlation_from_periodogram(t, co)
    M, L = snapshots.n_bins, snapshots.n_snapshots
    L_eff = M * L if options.criterion_snapshots == "total" else L
    return eig_magnitudes(build_acm(r, options.acm_for("ap")), L_eff)


def iss_spectra(snapshots: SnapshotTensor, options: ProcessingOptions = ProcessingOptions(),
                coarray: Coarray | None = None) -> list[EigSpectrum]:
    """One spectrum per bin: SCM, direct coarray correlation, ACM (SS by default)."""
    co = _coarray(snapshots, coarray)
    r = coarray_correlation_stack(scm_stack(snapshots), co)
    acms = ss_acm_stack(r) if options.acm_for("iss") == "ss" else lra_acm_stack(r)
    return eig_magnitudes_stack(acms, snapshots.n_snapshots)


def nb_spectrum(snapshots: SnapshotTensor, options: ProcessingOptions = ProcessingOptions(),
                coarray: Coarray | None = None) -> EigSpectrum:
    if snapshots.n_bins != 1:
        raise ValueError("the narrowband benchmark expects a single frequency bin")
    co = _coarray(snapshots, coarray)
    r = coarray_correlation(scm(snapshots, 0), co)
    return eig_magnitudes(build_acm(r, options.acm_for("nb")), snapshots.n_snapshots)


def enumerate_spectrum(strategy: str, criterion: str, spectra: EigSpectrum | list[EigSpectrum]) -> EnumerationResult:
    """Apply a criterion to one spectrum, or average its curves over per-bin spectra."""
    crit = get_criterion(criterion)
    if isinstance(spectra, EigSpectrum):
        curve = crit(spectra)
        return EnumerationResult(strategy, criterion, curve.argmin, curve, spectra.effective_snapshots)
    per_bin = [crit(s) for s in spectra]
    curve = mean_curve(per_bin)
    return EnumerationResult(strategy, criterion, curve.argmin, curve, spectra[0].effective_snapshots, per_bin)


def run_ap(snapshots: SnapshotTensor, criterion: str, options: ProcessingOptions = ProcessingOptions(),
           coarray: Coarray | None = None) -> EnumerationResult:
    return enumerate_spectrum("ap", criterion, ap_spectrum(snapshots, options, coarray))


def run_iss(snapshots: SnapshotTensor, criterion: str, options: ProcessingOptions = ProcessingOptions(),
            coarray: Coarray | None = None) -> EnumerationResult:
    return enumerate_spectrum("iss", criterion, iss_spectra(snapshots, options, coarray))


def run_nb(snapshots: SnapshotTensor, criterion: str, options: ProcessingOptions = ProcessingOptions(),
           coarray: Coarray | None = None) -> EnumerationResult:
    """Narrowband benchmark on single-bin data, typically from ``Scenario.narrowband_equivalent()``."""
    return enumerate_spectrum("nb", criterion, nb_spectrum(snapshots, options, coarray))


RUNNERS = {"ap": run_ap, "iss": run_iss, "nb": run_nb}


def run_strategy(strategy: str, snapshots: SnapshotTensor, criterion: str,
                 options: ProcessingOptions = ProcessingOptions(), coarray: Coarray | None = None) -> EnumerationResult:
    try:
        runner = RUNNERS[strategy.lower()]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}") from None
    return runner(snapshots, criterion, options, coarray)
