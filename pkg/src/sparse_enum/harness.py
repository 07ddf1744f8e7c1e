"""Monte Carlo sweeps of detection probability and the figure presets.

Every trial draws fresh data from a seed derived from
``(master_seed, sweep_index, grid_index, trial_index)``, so the outcome of a
trial does not depend on which worker ran it or in what order. Wideband data
and the narrowband-benchmark data of a trial use separate child streams.
"""

from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from .geometry import difference_coarray, mra6
from .pipeline import (
    STRATEGIES,
    ProcessingOptions,
    ap_spectrum,
    enumerate_spectrum,
    iss_spectra,
    nb_spectrum,
)
from .synth import Scenario, band, nine_source_u, synthesize

logger = logging.getLogger(__name__)

PARAMETERS = ("snapshots", "snr_db", "separation_u")
WIDEBAND_STREAM, NARROWBAND_STREAM = 0, 1


class SweepError(RuntimeError):
    """A trial failed; the message names the grid point, trial and stage."""


def parse_method(text: str) -> tuple[str, str]:
    """``"ap:mdlgap"`` -> ``("ap", "mdlgap")``."""
    strategy, sep, criterion = text.strip().lower().partition(":")
    if not sep or strategy not in STRATEGIES or criterion not in ("mdl", "mdlgap", "sorte"):
        raise ValueError(f"bad method {text!r}; expected strategy:criterion such as 'ap:mdlgap'")
    return strategy, criterion


@dataclass(frozen=True)
class Sweep:
    """Scenario template swept along one parameter.

    For ``separation_u`` the template must hold two sources; the first keeps
    its direction and the second is placed ``value`` away from it.
    """

    scenario: Scenario
    parameter: str
    grid: tuple[float, ...]
    trials: int
    methods: tuple[tuple[str, str], ...]
    master_seed: int = 0
    options: ProcessingOptions = ProcessingOptions()
    name: str = "sweep"
    sweep_index: int = 0

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise ValueError(f"unknown sweep parameter {self.parameter!r}; choose from {PARAMETERS}")
        grid = tuple(self.grid)
        if not grid:
            raise ValueError("sweep grid is empty")
        if list(grid) != sorted(grid):
            raise ValueError("sweep grid must be sorted")
        object.__setattr__(self, "grid", grid)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        methods = tuple(parse_method(m) if isinstance(m, str) else tuple(m) for m in self.methods)
        if not methods:
            raise ValueError("no methods requested")
        object.__setattr__(self, "methods", methods)
        if self.parameter == "separation_u" and self.scenario.n_sources != 2:
            raise ValueError("separation sweeps need a two-source template")

    def scenario_at(self, value: float) -> Scenario:
        sc = self.scenario
        if self.parameter == "snapshots":
            return sc.replace(snapshots=int(value))
        if self.parameter == "snr_db":
            return sc.with_snr_db(value)
        u0 = sc.source_u[0]
        return sc.replace(source_u=(u0, u0 + value))

    def trial_seed(self, grid_index: int, trial: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.master_seed, spawn_key=(self.sweep_index, grid_index, trial))

    def with_(self, **changes) -> Sweep:
        return replace(self, **changes)


@dataclass
class DetectionStats:
    """Per grid point and method: how many trials returned the true source count."""

    sweep: Sweep
    true_sources: list[int]
    estimates: np.ndarray = field(repr=False)  # (grid, trials, methods)

    @property
    def methods(self) -> tuple[tuple[str, str], ...]:
        return self.sweep.methods

    @property
    def grid(self) -> tuple[float, ...]:
        return self.sweep.grid

    @property
    def detect_count(self) -> np.ndarray:
        """``(grid, methods)`` counts of exact hits."""
        truth = np.asarray(self.true_sources)[:, None, None]
        return np.sum(self.estimates == truth, axis=1)

    @property
    def trials(self) -> int:
        return self.estimates.shape[1]

    @property
    def p_detect(self) -> np.ndarray:
        return self.detect_count / self.trials

    def wilson(self, alpha: float = 0.05) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = proportion_confint(self.detect_count, self.trials, alpha=alpha, method="wilson")
        return np.asarray(lo), np.asarray(hi)

    def curve(self, strategy: str, criterion: str) -> np.ndarray:
        return self.p_detect[:, self.methods.index((strategy, criterion))]

    def at(self, strategy: str, criterion: str, value: float) -> float:
        return float(self.curve(strategy, criterion)[self.grid.index(value)])

    def to_csv(self, strategy: str, criterion: str) -> str:
        j = self.methods.index((strategy, criterion))
        lo, hi = self.wilson()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["grid_value", "p_detect", "ci_lo", "ci_hi", "trials"])
        for i, value in enumerate(self.grid):
            writer.writerow([repr(float(value)), repr(float(self.p_detect[i, j])),
                             repr(float(lo[i, j])), repr(float(hi[i, j])), self.trials])
        return buf.getvalue()

    def write(self, out_dir: str | Path, svg: bool = True) -> list[Path]:
        """Write one CSV per method plus an SVG chart; returns the written paths."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for strategy, criterion in self.methods:
            path = out / f"{self.sweep.name}_{strategy}_{criterion}.csv"
            path.write_text(self.to_csv(strategy, criterion))
            paths.append(path)
        if svg:
            path = out / f"{self.sweep.name}.svg"
            plot_detection(self, path)
            paths.append(path)
        return paths

    def summary(self) -> str:
        lines = [f"{self.sweep.name}: {self.sweep.parameter} sweep, {self.trials} trials"]
        header = "grid".rjust(8) + "".join(f"{s}:{c}".rjust(12) for s, c in self.methods)
        lines.append(header)
        for i, value in enumerate(self.grid):
            lines.append(f"{value:8g}" + "".join(f"{p:12.3f}" for p in self.p_detect[i]))
        return "\n".join(lines)


def _run_trial(sweep: Sweep, scenarios: list[Scenario], grid_index: int, trial: int) -> list[int]:
    sc = scenarios[grid_index]
    co = difference_coarray(sc.geometry)
    seed = sweep.trial_seed(grid_index, trial)
    stage = "synthesis"
    try:
        strategies = {s for s, _ in sweep.methods}
        spectra = {}
        if strategies & {"ap", "iss"}:
            x = synthesize(sc, np.random.SeedSequence(seed.entropy, spawn_key=(*seed.spawn_key, WIDEBAND_STREAM)))
            if "ap" in strategies:
                stage = "ap"
                spectra["ap"] = ap_spectrum(x, sweep.options, co)
            if "iss" in strategies:
                stage = "iss"
                spectra["iss"] = iss_spectra(x, sweep.options, co)
        if "nb" in strategies:
            stage = "nb synthesis"
            xn = synthesize(sc.narrowband_equivalent(),
                            np.random.SeedSequence(seed.entropy, spawn_key=(*seed.spawn_key, NARROWBAND_STREAM)))
            stage = "nb"
            spectra["nb"] = nb_spectrum(xn, sweep.options, co)
        out = []
        for strategy, criterion in sweep.methods:
            stage = f"{strategy}:{criterion}"
            out.append(enumerate_spectrum(strategy, criterion, spectra[strategy]).estimate)
        return out
    except Exception as exc:
        value = sweep.grid[grid_index]
        raise SweepError(
            f"{sweep.name}: {sweep.parameter}={value:g} (grid index {grid_index}), "
            f"trial {trial}, stage {stage}: {exc}"
        ) from exc


def run_sweep(sweep: Sweep, threads: int = 1) -> DetectionStats:
    """Run every (grid point, trial) and collect the estimates.

    Results are identical for any ``threads`` value: trials are seeded
    individually and gathered back in (grid index, trial index) order.
    """
    scenarios = [sweep.scenario_at(v) for v in sweep.grid]
    tasks = [(g, t) for g in range(len(sweep.grid)) for t in range(sweep.trials)]
    logger.info("%s: %d grid points x %d trials on %d thread(s)", sweep.name, len(sweep.grid), sweep.trials, threads)
    if threads <= 1:
        results = [_run_trial(sweep, scenarios, g, t) for g, t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda gt: _run_trial(sweep, scenarios, *gt), tasks))
    estimates = np.array(results, dtype=int).reshape(len(sweep.grid), sweep.trials, len(sweep.methods))
    truth = [sc.n_sources for sc in scenarios]
    return DetectionStats(sweep, truth, estimates)


def plot_detection(stats: DetectionStats, path: str | Path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "sparse-enum"
    fig, ax = plt.subplots(figsize=(6, 4))
    lo, hi = stats.wilson()
    x = np.asarray(stats.grid, dtype=float)
    for j, (strategy, criterion) in enumerate(stats.methods):
        ax.plot(x, stats.p_detect[:, j], marker="o", ms=3, label=f"{strategy.upper()} {criterion}")
        ax.fill_between(x, lo[:, j], hi[:, j], alpha=0.15)
    ax.set_xlabel({"snapshots": "snapshots / sensor", "snr_db": "sensor SNR (dB)",
                   "separation_u": "source separation in u"}[stats.sweep.parameter])
    ax.set_ylabel("probability of detection")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    ax.set_title(stats.sweep.name)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def base_scenario(source_u, snapshots: int, snr_db: float = 0.0) -> Scenario:
    """MRA6 with 41 bins over 80-120 Hz around 100 Hz and unit noise power."""
    sc = Scenario(mra6(), tuple(source_u), 1.0, 1.0, band(80.0, 120.0, 41), 100.0, snapshots)
    return sc.with_snr_db(snr_db)


ALL_METHODS = tuple((s, c) for s in STRATEGIES for c in ("mdl", "mdlgap", "sorte"))
GAP_SORTE = tuple((s, c) for s in STRATEGIES for c in ("mdlgap", "sorte"))


def figure_scenarios() -> dict[str, Sweep]:
    """Sweep presets for the two-source and nine-source experiments."""
    nine = nine_source_u()
    return {
        "fig2": Sweep(base_scenario((0.0, 0.05), 3), "separation_u", (0.05, 0.3), 100,
                      ALL_METHODS, name="fig2", sweep_index=2),
        "fig3": Sweep(base_scenario((0.0, 0.05), 3), "separation_u",
                      tuple(np.round(np.arange(1, 41) * 0.01, 2)), 200, ALL_METHODS, name="fig3", sweep_index=3),
        "fig4": Sweep(base_scenario(nine, 1), "snapshots", tuple(range(1, 11)), 500,
                      GAP_SORTE, name="fig4", sweep_index=4),
        "fig5": Sweep(base_scenario(nine, 5), "snr_db", tuple(range(-20, 11, 2)), 500,
                      GAP_SORTE, name="fig5", sweep_index=5),
    }
