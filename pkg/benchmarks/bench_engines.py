"""Compare the compiled and pure-Python event-loop engines.

Runs the same batch of simulations through both engines, checks the
results are bit-identical, and reports wall-clock times plus speedup.

Usage: python benchmarks/bench_engines.py [--sizes 100,1000,5000] [--repeat 20]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import riotsched.sim as sim
from riotsched.catalog import default_catalog
from riotsched.riot import b_rank
from riotsched.sim import Schedule, simulate
from riotsched.sim import _engine_c, _engine_py
from riotsched.workflow import generate


def random_schedule(workflow, catalog, rng, max_clusters=8):
    ids = list(workflow.topo_order)
    k = int(rng.integers(1, max_clusters + 1))
    labels = [int(rng.integers(k)) for _ in ids]
    used = sorted(set(labels))
    remap = {c: i for i, c in enumerate(used)}
    names = [t.name for t in catalog.types]
    return Schedule(
        task_to_cluster={t: remap[c] for t, c in zip(ids, labels)},
        cluster_to_type={remap[c]: names[int(rng.integers(len(names)))] for c in used},
        secondary_order=b_rank(workflow, rng),
    )


def run_batch(engine, cases):
    sim._engine = engine
    started = time.perf_counter()
    results = [simulate(wf, sched, cat) for wf, sched, cat in cases]
    elapsed = time.perf_counter() - started
    return elapsed, [(ev.makespan, ev.cost) for ev in results]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,1000,5000")
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    cat = default_catalog()
    rng = np.random.default_rng(args.seed)
    print(f"{'n_tasks':>8} {'compiled':>10} {'python':>10} {'speedup':>8}  identical")
    original = sim._engine
    try:
        for size in (int(s) for s in args.sizes.split(",")):
            wf = generate("epigenomics-like", size, seed=args.seed)
            cases = [(wf, random_schedule(wf, cat, rng), cat) for _ in range(args.repeat)]
            t_c, res_c = run_batch(_engine_c, cases)
            t_py, res_py = run_batch(_engine_py, cases)
            same = res_c == res_py
            print(
                f"{size:>8} {t_c:>9.3f}s {t_py:>9.3f}s {t_py / t_c:>7.1f}x  {same}"
            )
            if not same:
                raise SystemExit("engine outputs differ")
    finally:
        sim._engine = original


if __name__ == "__main__":
    main()
