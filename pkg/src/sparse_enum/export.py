"""CSV writers for the intermediate products, mostly for plotting and debugging."""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .acm import AugmentedCovariance
from .criteria import CriterionCurve
from .geometry import Coarray
from .spectral import CorrelationVector, Periodogram


def _dump(rows, header, path=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def _num(x) -> str:
    return repr(float(x))


def coarray_csv(coarray: Coarray, path=None) -> str:
    """Columns ``k,weight,contiguous``."""
    P = coarray.contiguous_P
    rows = [(k, w, int(abs(k) < P)) for k, w in sorted(coarray.weights.items())]
    return _dump(rows, ["k", "weight", "contiguous"], path)


def periodogram_csv(p: Periodogram, path=None) -> str:
    return _dump(zip(map(_num, p.u_grid), map(_num, p.values)), ["u", "value"], path)


def correlation_csv(r: CorrelationVector, path=None) -> str:
    rows = [(int(k), _num(v.real), _num(v.imag)) for k, v in zip(r.lags, r.values)]
    return _dump(rows, ["k", "re", "im"], path)


def acm_csv(acm: AugmentedCovariance | np.ndarray, path=None) -> str:
    """Row-major matrix, each entry written as an adjacent ``re,im`` pair."""
    R = acm.matrix if isinstance(acm, AugmentedCovariance) else np.asarray(acm)
    rows = [[_num(f(v)) for v in row for f in (np.real, np.imag)] for row in R]
    return _dump(rows, None, path)


def curve_csv(curve: CriterionCurve, path=None) -> str:
    """Columns ``q,value,is_argmin``; infinite values are written as ``inf``."""
    best = curve.argmin
    rows = [(int(q), _num(v), int(q == best)) for q, v in zip(curve.q, curve.values)]
    return _dump(rows, ["q", "value", "is_argmin"], path)
