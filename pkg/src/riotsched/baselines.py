"""Comparison schedulers: random search and a greedy list scheduler.

Random search is the sanity-check baseline for equal-budget comparisons.
The list scheduler is a single-objective earliest-finish-time greedy over
a fixed pool holding one VM of every catalog type; it returns one point,
not a trade-off set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import BYTES_PER_MB, Catalog
from .riot import FrontierEntry, Simulator, b_rank
from .metrics import ObjectivePoint, nondominated
from .sim import Schedule, simulate
from .workflow import Workflow


@dataclass(frozen=True)
class Budget:
    max_simulations: int

    def __post_init__(self):
        if self.max_simulations < 1:
            raise ValueError("max_simulations must be >= 1")


def _random_clustering(n_tasks: int, max_clusters: int, rng: np.random.Generator):
    k = int(rng.integers(1, max_clusters + 1))
    labels = rng.integers(k, size=n_tasks)
    # relabel to contiguous ids in order of first appearance
    remap: dict[int, int] = {}
    out = []
    for lab in labels:
        if int(lab) not in remap:
            remap[int(lab)] = len(remap)
        out.append(remap[int(lab)])
    return out, len(remap)


def random_search(
    workflow: Workflow,
    catalog: Catalog,
    budget: Budget | int,
    rng: np.random.Generator,
    simulator: Simulator = simulate,
) -> list[FrontierEntry]:
    """Simulate `budget` uniformly random schedules, keep the non-dominated."""
    max_sims = budget.max_simulations if isinstance(budget, Budget) else int(budget)
    order = b_rank(workflow, rng)
    ids = list(workflow.topo_order)
    names = [t.name for t in catalog.types]
    max_clusters = min(len(ids), 2 * len(catalog))

    entries = []
    for _ in range(max_sims):
        labels, k = _random_clustering(len(ids), max_clusters, rng)
        types = [names[i] for i in rng.integers(len(names), size=k)]
        schedule = Schedule(
            task_to_cluster=dict(zip(ids, labels)),
            cluster_to_type=dict(enumerate(types)),
            secondary_order=order,
        )
        ev = simulator(workflow, schedule, catalog)
        entries.append(
            FrontierEntry(schedule, ev.makespan, ev.cost, None, k, provenance="simulated")
        )
    points = [ObjectivePoint(e.makespan, e.cost, tag=i) for i, e in enumerate(entries)]
    return [entries[p.tag] for p in nondominated(points)]


def heft_schedule(
    workflow: Workflow,
    catalog: Catalog,
    simulator: Simulator = simulate,
) -> list[FrontierEntry]:
    """Greedy earliest-finish-time placement onto one VM per catalog type.

    Tasks are taken in rank order; each goes to the pool VM with the
    smallest estimated finish time, counting compute time and the cost of
    pulling predecessor files across VM boundaries.  Deterministic: the
    internal rank tie-break uses a fixed seed.
    """
    order = b_rank(workflow, np.random.default_rng(0))
    pool = list(catalog.types)  # cluster c runs pool[c]
    vm_free = [0.0] * len(pool)
    placement: dict[str, int] = {}
    est_ft: dict[str, float] = {}

    for tid in order:
        task = workflow.tasks[tid]
        best_c, best_ft = 0, float("inf")
        for c, vm in enumerate(pool):
            ready = vm_free[c]
            for pred in workflow.preds[tid]:
                arrival = est_ft[pred]
                if placement[pred] != c:
                    bw = min(vm.bandwidth_mbps, pool[placement[pred]].bandwidth_mbps)
                    arrival += workflow.edges[(pred, tid)] / (bw * BYTES_PER_MB)
                ready = max(ready, arrival)
            finish = ready + task.workload / vm.compute_units
            if finish < best_ft:
                best_ft, best_c = finish, c
        placement[tid] = best_c
        est_ft[tid] = best_ft
        vm_free[best_c] = best_ft

    used = sorted(set(placement.values()))
    remap = {c: i for i, c in enumerate(used)}
    schedule = Schedule(
        task_to_cluster={t: remap[c] for t, c in placement.items()},
        cluster_to_type={remap[c]: pool[c].name for c in used},
        secondary_order=order,
    )
    ev = simulator(workflow, schedule, catalog)
    return [
        FrontierEntry(schedule, ev.makespan, ev.cost, None, len(used), provenance="simulated")
    ]
