"""Command-line entry point: ``infophys --scenario NAME [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import io as iox
from .errors import InfoPhysError
from .scenarios import SCENARIOS, ScenarioConfig, ScenarioError, records_as_rows, run_scenario

log = logging.getLogger("infophys")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="infophys",
        description="Run information-physics scenarios and write CSV/JSON tables.",
    )
    p.add_argument("--scenario", choices=sorted(SCENARIOS), help="scenario to run")
    p.add_argument("--config", help="JSON config file ('-' reads stdin)")
    p.add_argument("--seed", type=int, help="base RNG seed (default 0)")
    p.add_argument("--base", choices=["2", "e", "10"], help="logarithm base for entropies")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    p.add_argument("--workers", type=int, help="parallel worker processes (default 1)")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="fix a parameter (JSON value), repeatable")
    p.add_argument("--grid", action="append", default=[], metavar="KEY=V1,V2,...",
                   help="sweep a parameter over comma-separated JSON values, repeatable")
    p.add_argument("--plot", action="store_true", help="also render a PNG figure next to --out")
    p.add_argument("--timing", action="store_true", help="include wall_time_ms (breaks byte-identical reruns)")
    p.add_argument("--list", action="store_true", help="list scenarios and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _json_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _parse_kv(items, sweep: bool) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise InfoPhysError(f"expected KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k] = [_json_value(x) for x in v.split(",") if x != ""] if sweep else _json_value(v)
    return out


def make_config(args) -> ScenarioConfig:
    obj = {}
    if args.config:
        text = sys.stdin.read() if args.config == "-" else Path(args.config).read_text()
        obj = json.loads(text)
    base = args.base
    if base is not None and base != "e":
        base = int(base)
    cfg = ScenarioConfig.from_dict(
        obj,
        scenario=args.scenario,
        seed=args.seed,
        base=base,
        out=args.out,
        format=args.format,
        workers=args.workers,
    )
    cfg.params.update(_parse_kv(args.set, sweep=False))
    cfg.grid.update(_parse_kv(args.grid, sweep=True))
    ScenarioConfig.__post_init__(cfg)
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.list:
        for name, spec in SCENARIOS.items():
            print(f"{name:16s} {spec.description}")
        return 0
    if not args.scenario and not args.config:
        build_parser().error("--scenario or --config is required")
    try:
        cfg = make_config(args)
        cfg.points()
    except (InfoPhysError, json.JSONDecodeError, OSError) as exc:
        print(f"infophys: error: {exc}", file=sys.stderr)
        return 2
    if args.plot and not cfg.out:
        print("infophys: error: --plot needs --out", file=sys.stderr)
        return 2

    status = 0
    try:
        records = run_scenario(cfg)
    except ScenarioError as exc:
        print(f"infophys: {exc}", file=sys.stderr)
        records = exc.records
        status = 1
    base_used = cfg.base if cfg.base is not None else SCENARIOS[cfg.scenario].default_base
    rows = records_as_rows(records, base_used, timing=args.timing)
    if not rows:
        return status or 1
    try:
        iox.emit(rows, cfg.format, cfg.out)
    except OSError as exc:
        print(f"infophys: error: {exc}", file=sys.stderr)
        return 1
    log.info("wrote %d rows to %s", len(rows), cfg.out or "stdout")
    if args.plot:
        from .plotting import can_plot, plot_rows

        if can_plot(cfg.scenario):
            fig = plot_rows(cfg.scenario, rows, Path(cfg.out).with_suffix(".png"))
            log.info("wrote figure %s", fig)
        else:
            log.warning("scenario %s has no figure", cfg.scenario)
    return status


if __name__ == "__main__":
    sys.exit(main())
