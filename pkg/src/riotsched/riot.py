"""Stochastic scheduler: rank-based ordering, probabilistic task grouping,
and surrogate-assisted search over VM-type mappings.

The pipeline runs one ordering pass, then for each value of the control
parameter eta builds a task clustering and scores a large pool of VM-type
mappings: a small set of anchors (one iso-mapping per catalog type plus a
few random mappings) is truly simulated, and every other candidate is
extrapolated between its nearest anchor and that anchor's farthest peer
in price-rank space.  The pooled candidates are filtered to the
non-dominated set, re-simulated, and filtered once more.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .catalog import Catalog
from .errors import DegenerateAnchors, LengthMismatch
from .metrics import ObjectivePoint, nondominated
from .sim import Evaluation, Schedule, simulate
from .workflow import Workflow

Simulator = Callable[[Workflow, Schedule, Catalog], Evaluation]

DEFAULT_ETA_GRID = tuple(round(0.05 * k, 2) for k in range(1, 21))


@dataclass(frozen=True)
class RiotParams:
    """Search-budget and geometry knobs, with the stock defaults."""

    n_random: int = 500
    n_anchor_extra: int = 30
    eta_grid: tuple[float, ...] = DEFAULT_ETA_GRID
    distance_alpha: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n_random <= 0:
            raise ValueError("n_random must be > 0")
        if self.n_anchor_extra < 0:
            raise ValueError("n_anchor_extra must be >= 0")
        if any(not 0.0 <= e <= 1.0 for e in self.eta_grid):
            raise ValueError("every eta must lie in [0, 1]")
        if self.distance_alpha < 1:
            raise ValueError("distance_alpha must be >= 1")


@dataclass(frozen=True)
class Clustering:
    task_to_cluster: dict[str, int]
    n_clusters: int


@dataclass(frozen=True)
class TypeMapping:
    """VM type per cluster, with objectives once evaluated or estimated."""

    assignment: tuple[str, ...]
    objectives: tuple[float, float] | None = None  # (makespan, cost)
    provenance: str = "surrogate-estimated"


@dataclass(frozen=True)
class FrontierEntry:
    """One non-dominated schedule with its simulated objectives."""

    schedule: Schedule
    makespan: float
    cost: float
    eta: float | None
    n_vms: int
    provenance: str = "resimulated"


# --- ordering ------------------------------------------------------------

def b_rank(workflow: Workflow, rng: np.random.Generator | None = None) -> tuple[str, ...]:
    """Tasks sorted by decreasing hop distance to the exit task.

    rank(exit) = 1 and rank(i) = 1 + max rank over successors; the higher
    a task's rank, the earlier it runs.  Equal ranks are shuffled with the
    given generator, so the result is always a topological linearization.
    """
    rng = rng or np.random.default_rng()
    rank: dict[str, int] = {}
    for tid in reversed(workflow.topo_order):
        succs = workflow.succs[tid]
        rank[tid] = 1 if not succs else 1 + max(rank[s] for s in succs)
    by_rank: dict[int, list[str]] = {}
    for tid, r in rank.items():
        by_rank.setdefault(r, []).append(tid)
    order: list[str] = []
    for r in sorted(by_rank, reverse=True):
        group = sorted(by_rank[r])
        rng.shuffle(group)
        order.extend(group)
    return tuple(order)


def rank_values(workflow: Workflow) -> dict[str, int]:
    """The raw rank recursion, exposed for verification."""
    rank: dict[str, int] = {}
    for tid in reversed(workflow.topo_order):
        succs = workflow.succs[tid]
        rank[tid] = 1 if not succs else 1 + max(rank[s] for s in succs)
    return rank


# --- grouping ------------------------------------------------------------

def critical_tasks(workflow: Workflow) -> set[str]:
    """The start task plus every task whose fan-in is in the top third.

    The fan-in threshold is taken over the distinct in-degree values of
    real (non-synthetic) tasks: the top third of those values, rounded up,
    are critical; every task at or above the smallest of them qualifies.
    """
    real = workflow.real_task_ids
    indeg = {t: workflow.in_degree(t, real_only=True) for t in real}
    crit = {workflow.start}
    if indeg:
        values = sorted(set(indeg.values()), reverse=True)
        top = values[: max(1, -(-len(values) // 3))]
        threshold = top[-1]
        if threshold > 0:
            crit.update(t for t, d in indeg.items() if d >= threshold)
    return crit


def assign_probabilities(workflow: Workflow, eta: float) -> dict[str, float]:
    """New-cluster probability per task: 1 for critical tasks, otherwise
    eta times the average probability of the predecessors."""
    crit = critical_tasks(workflow)
    p: dict[str, float] = {}
    for tid in workflow.topo_order:
        if tid in crit:
            p[tid] = 1.0
        else:
            preds = workflow.preds[tid]
            p[tid] = eta * sum(p[q] for q in preds) / len(preds) if preds else eta
    return p


def task_group(workflow: Workflow, eta: float, rng: np.random.Generator) -> Clustering:
    """Probabilistic clustering of tasks into VM-backed groups.

    Visits tasks in topological order.  Each task opens a fresh cluster
    with its assigned probability; otherwise a critical task joins any
    existing cluster uniformly at random and a non-critical task joins
    the cluster of one of its predecessors.
    """
    probs = assign_probabilities(workflow, eta)
    crit = critical_tasks(workflow)
    assignment: dict[str, int] = {}
    n_clusters = 0
    for tid in workflow.topo_order:
        if tid == workflow.start:
            assignment[tid] = 0
            n_clusters = 1
            continue
        if rng.random() < probs[tid]:
            assignment[tid] = n_clusters
            n_clusters += 1
        elif tid in crit:
            assignment[tid] = int(rng.integers(n_clusters))
        else:
            choices = sorted({assignment[q] for q in workflow.preds[tid]})
            assignment[tid] = choices[int(rng.integers(len(choices)))]
    return Clustering(assignment, n_clusters)


# --- surrogate evaluation ------------------------------------------------

def _rank_vector(mapping: TypeMapping, catalog: Catalog) -> np.ndarray:
    return np.array([catalog.rank[name] for name in mapping.assignment], dtype=float)


def mapping_distance(
    x: TypeMapping, y: TypeMapping, catalog: Catalog, alpha: float = 1.0
) -> float:
    """Minkowski distance between two mappings in price-rank coordinates."""
    if len(x.assignment) != len(y.assignment):
        raise LengthMismatch(
            f"mappings have different lengths: {len(x.assignment)} vs {len(y.assignment)}"
        )
    diff = np.abs(_rank_vector(x, catalog) - _rank_vector(y, catalog))
    return float((diff**alpha).sum() ** (1.0 / alpha))


def _mapping_schedule(
    clustering: Clustering, mapping: Sequence[str], order: tuple[str, ...]
) -> Schedule:
    return Schedule(
        task_to_cluster=dict(clustering.task_to_cluster),
        cluster_to_type={c: mapping[c] for c in range(clustering.n_clusters)},
        secondary_order=order,
    )


def surrogate_evaluate(
    clustering: Clustering,
    workflow: Workflow,
    order: tuple[str, ...],
    catalog: Catalog,
    params: RiotParams,
    rng: np.random.Generator,
    simulator: Simulator = simulate,
) -> list[TypeMapping]:
    """Anchors simulated for real, everything else extrapolated.

    Anchors are one iso-mapping per catalog type plus a batch of random
    mappings.  Each of the N random candidates is scored per objective by
    projecting it onto the segment from its nearest anchor to the anchor
    farthest from that one, scaling the objective difference by the
    projected fraction of the distance.  The projection factor is clamped
    to [0, 1]: an estimate is always a blend of two truly simulated
    outcomes, so optimistic extrapolation beyond the far anchor can never
    crowd an exactly measured anchor out of the shortlist.

    Raises DegenerateAnchors (carrying the simulated anchors) when every
    anchor occupies the same point in rank space.
    """
    k = clustering.n_clusters
    names = [t.name for t in catalog.types]

    assignments = [tuple([name] * k) for name in names]
    for _ in range(params.n_anchor_extra):
        assignments.append(tuple(names[i] for i in rng.integers(len(names), size=k)))

    anchors = []
    for assignment in assignments:
        ev = simulator(workflow, _mapping_schedule(clustering, assignment, order), catalog)
        anchors.append(
            TypeMapping(assignment, objectives=(ev.makespan, ev.cost), provenance="anchor-simulated")
        )

    ranks = np.array([[catalog.rank[n] for n in a.assignment] for a in anchors], dtype=float)
    pair = cdist(ranks, ranks, metric="minkowski", p=params.distance_alpha)
    if pair.max() == 0.0:
        raise DegenerateAnchors(anchors)
    far_of = pair.argmax(axis=1)  # farthest anchor from each anchor

    rand_ranks = rng.integers(len(names), size=(params.n_random, k)).astype(float)
    d_to_anchor = cdist(rand_ranks, ranks, metric="minkowski", p=params.distance_alpha)
    near = d_to_anchor.argmin(axis=1)
    far = far_of[near]

    obj = np.array([a.objectives for a in anchors])  # (n_anchors, 2)
    u = rand_ranks - ranks[near]
    v = ranks[far] - ranks[near]
    norm_u = np.linalg.norm(u, axis=1)
    norm_v = np.linalg.norm(v, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_theta = np.where(norm_u > 0, (u * v).sum(axis=1) / (norm_u * norm_v), 0.0)
        ratio = np.where(
            norm_u > 0, d_to_anchor[np.arange(len(near)), near] / pair[near, far], 0.0
        )
    est = obj[near] + np.clip(ratio * cos_theta, 0.0, 1.0)[:, None] * (obj[far] - obj[near])

    randoms = [
        TypeMapping(
            tuple(names[int(r)] for r in rand_ranks[i]),
            objectives=(float(est[i, 0]), float(est[i, 1])),
            provenance="surrogate-estimated",
        )
        for i in range(params.n_random)
    ]
    return anchors + randoms


# --- full pipeline -------------------------------------------------------

def riot_schedule(
    workflow: Workflow,
    catalog: Catalog,
    params: RiotParams | None = None,
    simulator: Simulator = simulate,
    stats: dict | None = None,
) -> list[FrontierEntry]:
    """End-to-end search; returns the non-dominated schedules, every one
    carrying truly simulated objectives.

    Randomness comes from one seed; sub-streams are split per operation
    (ordering first, then per eta a grouping stream and a surrogate
    stream) so results do not depend on evaluation order.  If a dict is
    passed as `stats` it is filled with simulation accounting.
    """
    params = params or RiotParams()
    sim_calls = [0]
    inner = simulator

    def simulator(wf, sched, cat):  # noqa: F811 - counting shim
        sim_calls[0] += 1
        return inner(wf, sched, cat)

    seeds = np.random.SeedSequence(params.seed).spawn(1 + 2 * len(params.eta_grid))
    order_rng = np.random.default_rng(seeds[0])
    order = b_rank(workflow, order_rng)

    pool: list[tuple[float, Clustering, TypeMapping]] = []
    for i, eta in enumerate(params.eta_grid):
        group_rng = np.random.default_rng(seeds[1 + 2 * i])
        surr_rng = np.random.default_rng(seeds[2 + 2 * i])
        clustering = task_group(workflow, eta, group_rng)
        try:
            candidates = surrogate_evaluate(
                clustering, workflow, order, catalog, params, surr_rng, simulator
            )
        except DegenerateAnchors as exc:
            candidates = exc.anchors
        pool.extend((eta, clustering, m) for m in candidates)

    points = [
        ObjectivePoint(m.objectives[0], m.objectives[1], tag=i)
        for i, (_, _, m) in enumerate(pool)
    ]
    shortlist = []
    seen: set = set()
    for p in nondominated(points):
        eta, clustering, mapping = pool[p.tag]
        # identical schedules reached via different etas are one solution
        key = (tuple(sorted(clustering.task_to_cluster.items())), mapping.assignment)
        if key not in seen:
            seen.add(key)
            shortlist.append((eta, clustering, mapping))

    entries = []
    for eta, clustering, mapping in shortlist:
        schedule = _mapping_schedule(clustering, mapping.assignment, order)
        ev = simulator(workflow, schedule, catalog)
        entries.append(
            FrontierEntry(schedule, ev.makespan, ev.cost, eta, clustering.n_clusters)
        )

    final_points = [
        ObjectivePoint(e.makespan, e.cost, tag=i) for i, e in enumerate(entries)
    ]
    frontier = [entries[p.tag] for p in nondominated(final_points)]
    if stats is not None:
        stats["simulations"] = sim_calls[0]
        stats["anchor_simulations"] = len(params.eta_grid) * (len(catalog) + params.n_anchor_extra)
        stats["shortlist"] = len(shortlist)
    return frontier
