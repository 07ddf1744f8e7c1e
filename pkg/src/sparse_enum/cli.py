"""Command line entry point: ``sparse-enum coarray | enumerate | sweep``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .export import coarray_csv, curve_csv
from .geometry import difference_coarray, parse_geometry
from .harness import SweepError, figure_scenarios, run_sweep
from .pipeline import run_strategy
from .synth import synthesize

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def cmd_coarray(args) -> int:
    try:
        geom = parse_geometry(args.geometry)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    co = difference_coarray(geom)
    if args.format == "csv":
        sys.stdout.write(coarray_csv(co))
        return EXIT_OK
    P = co.contiguous_P
    print(f"positions: {list(geom.positions)}")
    print(f"contiguous lags: [{1 - P}, {P - 1}]  P = {P}")
    print("   k  weight")
    for k, w in sorted(co.weights.items()):
        mark = "" if abs(k) < P else "  (outside contiguous run)"
        print(f"{k:4d}  {w:6d}{mark}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    cfg = load_config(args.config)
    scenario = cfg.scenario
    if args.strategy == "nb":
        scenario = scenario.narrowband_equivalent()
    x = synthesize(scenario, args.seed)
    result = run_strategy(args.strategy, x, args.criterion, cfg.options)
    doc = result.to_dict()
    doc["true_sources"] = scenario.n_sources
    doc["seed"] = args.seed
    print(json.dumps(doc, indent=2))
    if args.curve_csv:
        curve_csv(result.curve, args.curve_csv)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.preset:
        sweep = figure_scenarios()[args.preset]
    else:
        sweep = load_config(args.config).sweep
        if sweep is None:
            raise ConfigError(f"{args.config} has no [sweep] section")
    changes = {}
    if args.trials is not None:
        changes["trials"] = args.trials
    if args.seed is not None:
        changes["master_seed"] = args.seed
    sweep = sweep.with_(**changes)
    stats = run_sweep(sweep, threads=args.threads)
    for path in stats.write(args.out, svg=not args.no_svg):
        logging.getLogger(__name__).info("wrote %s", path)
    print(stats.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparse-enum", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coarray", help="difference coarray of a geometry")
    p.add_argument("--geometry", required=True, help='"mra6", "nested:n1,n2", "coprime:a,b" or "1,2,5,..."')
    p.add_argument("--format", choices=("pretty", "csv"), default="pretty")
    p.set_defaults(func=cmd_coarray)

    p = sub.add_parser("enumerate", help="single realization from a TOML scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=("ap", "iss", "nb"), default="ap")
    p.add_argument("--criterion", choices=("mdl", "mdlgap", "sorte"), default="mdlgap")
    p.add_argument("--curve-csv", help="also write the criterion curve here")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sweep", help="Monte Carlo detection-probability sweep")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(figure_scenarios()))
    src.add_argument("--config")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="results")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-svg", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, SweepError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
