"""Deterministic discrete-event evaluation of (workflow, schedule, catalog).

A schedule maps every task to a cluster, every cluster to a VM type, and
fixes a secondary ordering that breaks ties among ready tasks sharing a
VM.  Each cluster is a single VM executing one task at a time.  A task's
duration is its compute time (workload divided by the type's compute
units) plus the time to push its output files to successors placed on
other clusters, charged to the sender at the slower of the two VMs'
bandwidths.  Billing is per started hour over each VM's busy span.

Two interchangeable event-loop engines back :func:`simulate`: a compiled
extension and a pure-Python fallback.  Selection happens at import; set
RIOTSCHED_ENGINE=python to force the fallback.  Both produce bit-identical
results.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..catalog import BYTES_PER_MB, Catalog, VmType
from ..errors import IncompleteSchedule, NonTopologicalOrder
from ..workflow import Workflow

if os.environ.get("RIOTSCHED_ENGINE", "").lower() == "python":
    from . import _engine_py as _engine

    ENGINE = "python"
else:
    try:
        from . import _engine_c as _engine

        ENGINE = "compiled"
    except ImportError:
        from . import _engine_py as _engine

        ENGINE = "python"


@dataclass(frozen=True)
class Schedule:
    """Task-to-cluster mapping, cluster VM types, and secondary ordering."""

    task_to_cluster: dict[str, int]
    cluster_to_type: dict[int, str]
    secondary_order: tuple[str, ...]


class TaskTimes(NamedTuple):
    st: float
    ft: float
    dur: float
    filetime: float


class VmSpan(NamedTuple):
    boot: float
    shutdown: float
    type_name: str


@dataclass(frozen=True)
class Evaluation:
    """Simulated objectives plus the full per-task and per-VM timeline."""

    makespan: float
    cost: float
    task_times: dict[str, TaskTimes]
    vm_spans: dict[int, VmSpan]


class SuccessorLink(NamedTuple):
    """One outgoing data edge as seen from the sending task."""

    nbytes: float
    succ_type: VmType
    same_cluster: bool


def task_duration(task, vm_type: VmType, links: list[SuccessorLink]) -> tuple[float, float]:
    """Duration and file-transfer time of one task on a given VM type.

    Transfer time accrues only for successors on other clusters, at the
    minimum of sender and receiver bandwidth; co-located successors read
    the file locally for free.
    """
    filetime = 0.0
    for link in links:
        if link.same_cluster:
            continue
        bw = min(vm_type.bandwidth_mbps, link.succ_type.bandwidth_mbps)
        filetime += link.nbytes / (bw * BYTES_PER_MB)
    return task.workload / vm_type.compute_units + filetime, filetime


def billed_cost(vm_spans: dict[int, VmSpan], catalog: Catalog) -> float:
    """Hourly-billed dollars over all VM spans; an empty span costs 0."""
    total = 0.0
    for span in vm_spans.values():
        hours = math.ceil((span.shutdown - span.boot) / catalog.billing_seconds)
        total += hours * catalog.get(span.type_name).price_per_hour
    return total


def _check_schedule(workflow: Workflow, schedule: Schedule) -> None:
    for tid in workflow.tasks:
        if tid not in schedule.task_to_cluster:
            raise IncompleteSchedule(f"task {tid!r} has no cluster assignment")
    for tid, cluster in schedule.task_to_cluster.items():
        if tid not in workflow.tasks:
            raise IncompleteSchedule(f"schedule names unknown task {tid!r}")
        if cluster not in schedule.cluster_to_type:
            raise IncompleteSchedule(f"cluster {cluster} has no VM type")
    order = schedule.secondary_order
    if set(order) != set(workflow.tasks) or len(order) != len(workflow.tasks):
        raise IncompleteSchedule("secondary_order is not a permutation of the tasks")
    pos = {tid: i for i, tid in enumerate(order)}
    for (u, v) in workflow.edges:
        if pos[u] > pos[v]:
            raise NonTopologicalOrder(f"{v!r} ordered before its predecessor {u!r}")


def simulate(workflow: Workflow, schedule: Schedule, catalog: Catalog) -> Evaluation:
    """Run the schedule to completion and report makespan, cost, timeline."""
    _check_schedule(workflow, schedule)

    ids = list(workflow.topo_order)
    index = {tid: i for i, tid in enumerate(ids)}
    n = len(ids)
    type_of_cluster = {c: catalog.get(name) for c, name in schedule.cluster_to_type.items()}

    dur = np.zeros(n)
    filetime = np.zeros(n)
    for tid in ids:
        i = index[tid]
        cluster = schedule.task_to_cluster[tid]
        vm = type_of_cluster[cluster]
        links = [
            SuccessorLink(
                workflow.edges[(tid, succ)],
                type_of_cluster[schedule.task_to_cluster[succ]],
                schedule.task_to_cluster[succ] == cluster,
            )
            for succ in workflow.succs[tid]
        ]
        dur[i], filetime[i] = task_duration(workflow.tasks[tid], vm, links)

    clusters = sorted(schedule.cluster_to_type)
    cluster_index = {c: k for k, c in enumerate(clusters)}
    order_pos = {tid: p for p, tid in enumerate(schedule.secondary_order)}
    grouped: list[list[int]] = [[] for _ in clusters]
    for tid in ids:
        grouped[cluster_index[schedule.task_to_cluster[tid]]].append(index[tid])
    for group in grouped:
        group.sort(key=lambda i: order_pos[ids[i]])

    cluster_indptr = np.zeros(len(clusters) + 1, dtype=np.int64)
    for k, group in enumerate(grouped):
        cluster_indptr[k + 1] = cluster_indptr[k] + len(group)
    cluster_tasks = np.fromiter(
        (i for group in grouped for i in group), dtype=np.int64, count=n
    )

    n_preds = np.fromiter((len(workflow.preds[t]) for t in ids), dtype=np.int64, count=n)
    succ_indptr = np.zeros(n + 1, dtype=np.int64)
    succ_list: list[int] = []
    for i, tid in enumerate(ids):
        succ_list.extend(index[s] for s in workflow.succs[tid])
        succ_indptr[i + 1] = len(succ_list)
    succ_indices = np.asarray(succ_list, dtype=np.int64)

    st, ft = _engine.run(
        n, len(clusters), cluster_indptr, cluster_tasks, n_preds, succ_indptr, succ_indices, dur
    )

    task_times = {
        tid: TaskTimes(float(st[i]), float(ft[i]), float(dur[i]), float(filetime[i]))
        for tid, i in index.items()
    }
    vm_spans: dict[int, VmSpan] = {}
    for c, k in cluster_index.items():
        group = grouped[k]
        if not group:
            continue
        boot = min(st[i] for i in group)
        shutdown = max(ft[i] for i in group)
        vm_spans[c] = VmSpan(float(boot), float(shutdown), schedule.cluster_to_type[c])

    return Evaluation(
        makespan=float(ft[index[workflow.exit]]),
        cost=billed_cost(vm_spans, catalog),
        task_times=task_times,
        vm_spans=vm_spans,
    )


# --- (de)serialization used by the CLI ----------------------------------

def schedule_to_dict(schedule: Schedule) -> dict:
    return {
        "task_to_cluster": dict(schedule.task_to_cluster),
        "cluster_to_type": {str(c): t for c, t in schedule.cluster_to_type.items()},
        "secondary_order": list(schedule.secondary_order),
    }


def schedule_from_dict(doc: dict) -> Schedule:
    return Schedule(
        task_to_cluster={str(t): int(c) for t, c in doc["task_to_cluster"].items()},
        cluster_to_type={int(c): str(t) for c, t in doc["cluster_to_type"].items()},
        secondary_order=tuple(doc["secondary_order"]),
    )


def evaluation_to_dict(ev: Evaluation) -> dict:
    return {
        "makespan_s": ev.makespan,
        "cost_usd": ev.cost,
        "task_times": {
            t: {"st": tt.st, "ft": tt.ft, "dur": tt.dur, "filetime": tt.filetime}
            for t, tt in sorted(ev.task_times.items())
        },
        "vm_spans": {
            str(c): {"boot": s.boot, "shutdown": s.shutdown, "type": s.type_name}
            for c, s in sorted(ev.vm_spans.items())
        },
    }
