"""Command-line front door.

Subcommands: gen (synthesize a workflow), schedule (run a scheduler and
write a frontier), simulate (evaluate one schedule), compare (frontier
quality metrics across runs).  Every command honors --seed; reports embed
the seed, a catalog hash, and the tool version.  Exit codes: 0 success,
1 internal error, 2 bad user input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import secrets
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import heft_schedule, random_search
from .catalog import Catalog, default_catalog, dump_catalog, load_catalog
from .dax import parse_dax
from .errors import SchedulerError
from .metrics import (
    ObjectivePoint,
    igd,
    hypervolume,
    nondominated,
    normalize,
    shared_bounds,
    spread,
)
from .errors import NotEnoughPoints
from .riot import FrontierEntry, RiotParams, riot_schedule
from .sim import evaluation_to_dict, schedule_from_dict, schedule_to_dict, simulate
from .workflow import SHAPES, generate, parse_json, serialize

CSV_COLUMNS = ["makespan_s", "cost_usd", "n_vms", "eta", "provenance", "mapping"]


def _load_workflow(path: str):
    text = Path(path).read_text()
    if path.endswith((".xml", ".dax")):
        return parse_dax(text)
    return parse_json(text)


def _resolve_catalog(arg: str | None) -> tuple[Catalog, str]:
    path = arg or os.environ.get("RIOT_CATALOG")
    catalog = load_catalog(Path(path).read_text()) if path else default_catalog()
    digest = hashlib.sha256(dump_catalog(catalog).encode()).hexdigest()
    return catalog, digest


def _resolve_seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    seed = secrets.randbelow(2**31)
    print(f"seed not given; using generated seed {seed}")
    return seed


def _counting(simulator):
    calls = [0]

    def wrapped(*args, **kwargs):
        calls[0] += 1
        return simulator(*args, **kwargs)

    return wrapped, calls


def _frontier_csv(entries: list[FrontierEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for e in entries:
        mapping = "|".join(
            e.schedule.cluster_to_type[c] for c in sorted(e.schedule.cluster_to_type)
        )
        writer.writerow(
            [f"{e.makespan:.9g}", f"{e.cost:.9g}", e.n_vms, "" if e.eta is None else e.eta,
             e.provenance, mapping]
        )
    return buf.getvalue()


def _frontier_doc(entries, *, algo, seed, catalog_hash, simulations, wall_time) -> dict:
    return {
        "tool_version": __version__,
        "algo": algo,
        "seed": seed,
        "catalog_sha256": catalog_hash,
        "simulations": simulations,
        "wall_time_s": wall_time,
        "points": [
            {
                "makespan_s": e.makespan,
                "cost_usd": e.cost,
                "n_vms": e.n_vms,
                "eta": e.eta,
                "provenance": e.provenance,
                "schedule": schedule_to_dict(e.schedule),
            }
            for e in entries
        ],
    }


def cmd_schedule(args) -> int:
    workflow = _load_workflow(args.workflow)
    catalog, catalog_hash = _resolve_catalog(args.catalog)
    seed = _resolve_seed(args.seed)
    simulator, calls = _counting(simulate)

    started = time.perf_counter()
    if args.algo == "riot":
        eta_grid = (
            tuple(float(x) for x in args.eta_grid.split(","))
            if args.eta_grid
            else RiotParams.eta_grid
        )
        params = RiotParams(
            n_random=args.n_random,
            n_anchor_extra=args.n_anchor,
            eta_grid=eta_grid,
            seed=seed,
        )
        entries = riot_schedule(workflow, catalog, params, simulator=simulator)
    elif args.algo == "random":
        rng = np.random.default_rng(seed)
        entries = random_search(workflow, catalog, args.budget, rng, simulator=simulator)
    else:
        entries = heft_schedule(workflow, catalog, simulator=simulator)
    wall = time.perf_counter() - started

    out = Path(args.out or (Path(args.workflow).stem + ".frontier"))
    doc = _frontier_doc(
        entries, algo=args.algo, seed=seed, catalog_hash=catalog_hash,
        simulations=calls[0], wall_time=wall,
    )
    if args.format in ("csv", "both"):
        out.with_suffix(".csv").write_text(_frontier_csv(entries))
    if args.format in ("json", "both"):
        out.with_suffix(".json").write_text(json.dumps(doc, indent=2))

    best_make = min(e.makespan for e in entries)
    best_cost = min(e.cost for e in entries)
    print(
        f"{args.algo}: {len(entries)} frontier points, best makespan {best_make:.3f} s, "
        f"best cost ${best_cost:.3f}, {calls[0]} simulations, {wall:.2f} s wall"
    )
    return 0


def cmd_simulate(args) -> int:
    workflow = _load_workflow(args.workflow)
    catalog, _ = _resolve_catalog(args.catalog)
    schedule = schedule_from_dict(json.loads(Path(args.schedule).read_text()))
    ev = simulate(workflow, schedule, catalog)
    if args.out:
        Path(args.out).write_text(json.dumps(evaluation_to_dict(ev), indent=2))
    print(f"makespan {ev.makespan:.6f} s, cost ${ev.cost:.6f}")
    return 0


def _load_frontier_points(path: str) -> list[ObjectivePoint]:
    text = Path(path).read_text()
    if path.endswith(".csv"):
        rows = list(csv.DictReader(io.StringIO(text)))
        try:
            return [
                ObjectivePoint(float(r["makespan_s"]), float(r["cost_usd"])) for r in rows
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchedulerError(f"{path}: malformed frontier CSV ({exc})") from exc
    try:
        doc = json.loads(text)
        return [
            ObjectivePoint(float(p["makespan_s"]), float(p["cost_usd"]))
            for p in doc["points"]
        ]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise SchedulerError(f"{path}: malformed frontier file ({exc})") from exc


def cmd_compare(args) -> int:
    frontiers = {path: _load_frontier_points(path) for path in args.frontiers}
    for path, pts in frontiers.items():
        if not pts:
            raise SchedulerError(f"{path}: frontier has no points")
    union = [p for pts in frontiers.values() for p in pts]
    bounds = shared_bounds(union)
    reference = normalize(list(nondominated(union)), bounds)

    report = {
        "tool_version": __version__,
        "bounds": {"makespan": bounds.makespan, "cost": bounds.cost},
        "igd_direction": "reference-to-obtained",
        "inputs": {},
    }
    print(f"{'frontier':40s} {'points':>6s} {'hypervol':>9s} {'igd':>9s} {'spread':>9s}")
    for path, pts in frontiers.items():
        norm = normalize(pts, bounds)
        hv = hypervolume(norm)
        g = igd(norm, reference)
        try:
            sp: float | None = spread(norm)
            sp_text = f"{sp:9.4f}"
        except NotEnoughPoints:
            sp = None
            sp_text = f"{'n.a.':>9s}"
        report["inputs"][path] = {
            "n_points": len(pts),
            "hypervolume": hv,
            "igd": g,
            "spread": sp,
        }
        print(f"{path:40s} {len(pts):6d} {hv:9.4f} {g:9.4f} {sp_text}")
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=2))
    return 0


def cmd_gen(args) -> int:
    seed = _resolve_seed(args.seed)
    wf = generate(args.shape, args.n, seed)
    text = serialize(wf)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riotsched", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schedule", help="run a scheduler and write its frontier")
    p.add_argument("workflow", help="workflow file (.json native, .xml/.dax)")
    p.add_argument("--algo", choices=["riot", "random", "heft"], default="riot")
    p.add_argument("--seed", type=int)
    p.add_argument("--catalog", help="catalog JSON path (default: RIOT_CATALOG env or built-in)")
    p.add_argument("--eta-grid", help="comma-separated eta values")
    p.add_argument("--n-random", type=int, default=RiotParams.n_random)
    p.add_argument("--n-anchor", type=int, default=RiotParams.n_anchor_extra)
    p.add_argument("--budget", type=int, default=760, help="simulations for --algo random")
    p.add_argument("--out", help="output path prefix (writes .csv and .json)")
    p.add_argument("--format", choices=["csv", "json", "both"], default="both")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("simulate", help="evaluate one schedule file")
    p.add_argument("workflow")
    p.add_argument("schedule", help="schedule JSON file")
    p.add_argument("--catalog")
    p.add_argument("--out", help="write the evaluation JSON here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="frontier quality metrics across runs")
    p.add_argument("frontiers", nargs="+", help="two or more frontier files (.json or .csv)")
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="generate a synthetic workflow")
    p.add_argument("--shape", choices=SHAPES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "compare" and len(args.frontiers) < 2:
        print("compare needs at least two frontier files", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (SchedulerError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
