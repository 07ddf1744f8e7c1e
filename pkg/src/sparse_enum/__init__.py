"""Wideband source enumeration on sparse linear arrays.

Periodogram averaging across frequency bins, lag-redundancy-averaged
augmented covariance matrices and the MDL / MDLgap / SORTE criteria, plus a
Monte Carlo harness for detection-probability sweeps.
"""

from .acm import AugmentedCovariance, EigSpectrum, eig_magnitudes, lra_acm, ss_acm
from .criteria import CriterionCurve, f_concave, h_asymptotic, mdl, mdlgap, sorte
from .geometry import ArrayGeometry, Coarray, coprime, difference_coarray, mra6, nested
from .harness import DetectionStats, Sweep, figure_scenarios, run_sweep
from .pipeline import EnumerationResult, ProcessingOptions, run_ap, run_iss, run_nb
from .spectral import (
    CorrelationVector,
    Periodogram,
    SampleCovariance,
    coarray_correlation,
    correlation_from_periodogram,
    narrowband_periodogram,
    scm,
    u_grid,
    wideband_periodogram,
)
from .synth import Scenario, SnapshotTensor, manifold, synthesize

__version__ = "0.1.0"
