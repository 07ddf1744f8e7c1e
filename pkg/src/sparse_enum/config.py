"""TOML scenario files.

Example::

    [geometry]
    preset = "mra6"            # or positions = [1, 2, 5, 6, 12, 14]

    [sources]
    u = [0.0, 0.3]             # or layout = "nine"
    snr_db = 0.0               # or power_db = [0.0, -3.0]

    [noise]
    power_db = 0.0

    [band]
    f_lo = 80.0
    f_hi = 120.0
    bins = 41
    f_center = 100.0

    [processing]
    snapshots = 3
    u_grid = 256
    acm = "default"            # default | lra | ss
    criterion_snapshots = "total"

    [sweep]
    parameter = "snapshots"
    grid = [1, 2, 3, 4, 5]
    trials = 200
    methods = ["ap:mdlgap", "iss:mdlgap"]
    seed = 0
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

from .geometry import parse_geometry
from .harness import Sweep
from .pipeline import ProcessingOptions
from .synth import SOUND_SPEED, Scenario, band, nine_source_u

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    scenario: Scenario
    options: ProcessingOptions
    sweep: Sweep | None = None


def _geometry(section: dict):
    if "positions" in section:
        geom = parse_geometry(list(section["positions"]))
    else:
        geom = parse_geometry(section.get("preset", "mra6"))
    if "spacing" in section:
        geom = geom.with_spacing(float(section["spacing"]))
    return geom


def _sources(section: dict) -> tuple[tuple[float, ...], list[float] | None, float | None]:
    if "u" in section:
        u = tuple(float(v) for v in section["u"])
    elif section.get("layout") == "nine":
        u = nine_source_u(section.get("endpoints", "right"))
    else:
        raise ConfigError("[sources] needs 'u' or layout = \"nine\"")
    if "power_db" in section and "snr_db" in section:
        raise ConfigError("[sources] takes either power_db or snr_db, not both")
    if "power_db" in section:
        p = section["power_db"]
        p = [float(p)] * len(u) if isinstance(p, (int, float)) else [float(v) for v in p]
        if len(p) != len(u):
            raise ConfigError("[sources] power_db must have one entry per source")
        return u, p, None
    return u, None, float(section.get("snr_db", 0.0))


def parse_config(data: dict) -> Config:
    try:
        geom = _geometry(data.get("geometry", {}))
        u, power_db, snr_db = _sources(data.get("sources", {}))
        noise_db = float(data.get("noise", {}).get("power_db", 0.0))
        noise = 10 ** (noise_db / 10)
        b = data.get("band", {})
        freqs = band(float(b.get("f_lo", 80.0)), float(b.get("f_hi", 120.0)), int(b.get("bins", 41)))
        proc = data.get("processing", {})
        powers = [10 ** (p / 10) for p in power_db] if power_db is not None else [noise * 10 ** (snr_db / 10)] * len(u)
        scenario = Scenario(
            geom, u, tuple(powers), noise, freqs,
            center_freq=float(b.get("f_center", 100.0)),
            snapshots=int(proc.get("snapshots", 3)),
            prop_speed=float(b.get("speed", SOUND_SPEED)),
        )
        options = ProcessingOptions(
            n_grid=int(proc.get("u_grid", 256)),
            acm=str(proc.get("acm", "default")),
            criterion_snapshots=str(proc.get("criterion_snapshots", "total")),
        )
        sweep = None
        if "sweep" in data:
            s = data["sweep"]
            sweep = Sweep(
                scenario, str(s["parameter"]), tuple(s["grid"]), int(s.get("trials", 100)),
                tuple(s.get("methods", ["ap:mdlgap"])), master_seed=int(s.get("seed", 0)),
                options=options, name=str(s.get("name", "sweep")),
            )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    return Config(scenario, options, sweep)


def load_config(path: str | Path) -> Config:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return parse_config(data)
