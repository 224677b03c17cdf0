"""Workflow DAGs: domain types, validation, native JSON I/O, synthetic generators.

A workflow is a directed acyclic graph of tasks.  Each task carries a
workload expressed in seconds on a reference 1-compute-unit machine; each
edge carries the size in bytes of the file flowing between the two tasks.
After validation a workflow always has a single start task and a single
exit task; if the raw graph has several sources or sinks, zero-workload
synthetic tasks are inserted and flagged so reports can hide them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    CycleDetected,
    DanglingEdge,
    EmptyWorkflow,
    MalformedInput,
    TooSmall,
    UnknownShape,
)

SYNTHETIC_START = "__start__"
SYNTHETIC_EXIT = "__exit__"


@dataclass(frozen=True)
class Task:
    """One computational task; workload is seconds at 1 compute unit."""

    id: str
    workload: float
    label: str | None = None
    synthetic: bool = False


@dataclass(frozen=True)
class DataEdge:
    """Data dependency: `to` consumes `bytes` bytes produced by `from_`."""

    from_: str
    to: str
    bytes: float


class Workflow:
    """Validated, immutable DAG with one start and one exit task.

    Construct via :func:`validate`, :func:`parse_json` or :func:`generate`;
    the constructor assumes its inputs already satisfy the invariants.
    """

    __slots__ = ("tasks", "edges", "preds", "succs", "start", "exit", "topo_order")

    def __init__(self, tasks, edges, preds, succs, start, exit_, topo_order):
        self.tasks: dict[str, Task] = tasks
        self.edges: dict[tuple[str, str], float] = edges
        self.preds: dict[str, tuple[str, ...]] = preds
        self.succs: dict[str, tuple[str, ...]] = succs
        self.start: str = start
        self.exit: str = exit_
        self.topo_order: tuple[str, ...] = topo_order

    def __len__(self):
        return len(self.tasks)

    def __eq__(self, other):
        if not isinstance(other, Workflow):
            return NotImplemented
        return self.tasks == other.tasks and self.edges == other.edges

    def __hash__(self):
        return hash((frozenset(self.tasks), frozenset(self.edges)))

    @property
    def real_task_ids(self) -> list[str]:
        """Ids of non-synthetic tasks, in topological order."""
        return [t for t in self.topo_order if not self.tasks[t].synthetic]

    def in_degree(self, task_id: str, real_only: bool = False) -> int:
        preds = self.preds[task_id]
        if real_only:
            preds = [p for p in preds if not self.tasks[p].synthetic]
        return len(preds)


def _find_cycle(succs: Mapping[str, Iterable[str]], nodes: Iterable[str]) -> list[str]:
    # Iterative DFS; returns one directed cycle from the given sub-graph.
    color = {n: 0 for n in nodes}  # 0 white, 1 on stack, 2 done
    parent: dict[str, str] = {}
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(succs.get(root, ())))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in color:
                    continue
                if color[nxt] == 0:
                    color[nxt] = 1
                    parent[nxt] = node
                    stack.append((nxt, iter(succs.get(nxt, ()))))
                    advanced = True
                    break
                if color[nxt] == 1:
                    cycle = [nxt, node]
                    cur = node
                    while cur != nxt:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    return cycle
            if not advanced:
                color[node] = 2
                stack.pop()
    raise AssertionError("no cycle found in cyclic graph")


def validate(raw_tasks: Iterable[Task], raw_edges: Iterable[DataEdge]) -> Workflow:
    """Check invariants and normalize multi-source/sink graphs.

    Raises CycleDetected, DanglingEdge, EmptyWorkflow or MalformedInput.
    """
    tasks: dict[str, Task] = {}
    for t in raw_tasks:
        if t.id in tasks:
            raise MalformedInput(f"duplicate task id {t.id!r}")
        if t.workload < 0:
            raise MalformedInput(f"task {t.id!r} has negative workload {t.workload}")
        tasks[t.id] = t
    if not tasks:
        raise EmptyWorkflow("workflow has no tasks")

    edges: dict[tuple[str, str], float] = {}
    for e in raw_edges:
        if e.from_ not in tasks:
            raise DanglingEdge(e.from_)
        if e.to not in tasks:
            raise DanglingEdge(e.to)
        if e.from_ == e.to:
            raise MalformedInput(f"self edge on task {e.from_!r}")
        if e.bytes < 0:
            raise MalformedInput(f"edge {e.from_!r}->{e.to!r} has negative bytes")
        if (e.from_, e.to) in edges:
            raise MalformedInput(f"duplicate edge {e.from_!r}->{e.to!r}")
        edges[(e.from_, e.to)] = float(e.bytes)

    sources = [t for t in tasks if not any(u == t for _, u in edges)]
    sinks = [t for t in tasks if not any(u == t for u, _ in edges)]
    # An acyclic graph always has a source and a sink; none means a cycle.
    succs_draft: dict[str, list[str]] = {t: [] for t in tasks}
    for u, v in edges:
        succs_draft[u].append(v)
    if not sources or not sinks:
        raise CycleDetected(_find_cycle(succs_draft, sorted(tasks, key=str)))

    if len(sources) > 1:
        tasks[SYNTHETIC_START] = Task(SYNTHETIC_START, 0.0, synthetic=True)
        for s in sources:
            edges[(SYNTHETIC_START, s)] = 0.0
    if len(sinks) > 1:
        tasks[SYNTHETIC_EXIT] = Task(SYNTHETIC_EXIT, 0.0, synthetic=True)
        for s in sinks:
            edges[(s, SYNTHETIC_EXIT)] = 0.0

    preds: dict[str, list[str]] = {t: [] for t in tasks}
    succs: dict[str, list[str]] = {t: [] for t in tasks}
    for u, v in edges:
        succs[u].append(v)
        preds[v].append(u)
    for adj in (preds, succs):
        for t in adj:
            adj[t].sort(key=str)

    # Kahn with a sorted ready set gives a canonical topological order
    # (and detects cycles not caught by the source/sink check).
    indeg = {t: len(preds[t]) for t in tasks}
    ready = sorted((t for t in tasks if indeg[t] == 0), key=str)
    topo: list[str] = []
    while ready:
        node = ready.pop(0)
        topo.append(node)
        newly = []
        for nxt in succs[node]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                newly.append(nxt)
        if newly:
            ready.extend(newly)
            ready.sort(key=str)
    if len(topo) != len(tasks):
        remaining = [t for t in tasks if indeg[t] > 0]
        raise CycleDetected(_find_cycle(succs, remaining))

    start = topo[0]
    exit_ = topo[-1]
    return Workflow(
        tasks,
        edges,
        {t: tuple(preds[t]) for t in tasks},
        {t: tuple(succs[t]) for t in tasks},
        start,
        exit_,
        tuple(topo),
    )


# --- native JSON format -------------------------------------------------

def parse_json(text: str) -> Workflow:
    """Parse the native JSON workflow format and validate it."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(exc.msg, position=f"offset {exc.pos}") from exc
    if not isinstance(doc, dict):
        raise MalformedInput("top-level value must be an object")

    tasks = []
    for i, raw in enumerate(doc.get("tasks", [])):
        if not isinstance(raw, dict) or "id" not in raw:
            raise MalformedInput("task missing 'id'", position=f"tasks[{i}]")
        if "workload" not in raw:
            raise MalformedInput("task missing 'workload'", position=f"tasks[{i}]")
        try:
            workload = float(raw["workload"])
        except (TypeError, ValueError):
            raise MalformedInput("workload must be a number", position=f"tasks[{i}]")
        tasks.append(Task(str(raw["id"]), workload, label=raw.get("label")))

    edges = []
    for i, raw in enumerate(doc.get("edges", [])):
        if not isinstance(raw, dict) or not {"from", "to", "bytes"} <= raw.keys():
            raise MalformedInput("edge needs 'from', 'to', 'bytes'", position=f"edges[{i}]")
        try:
            nbytes = float(raw["bytes"])
        except (TypeError, ValueError):
            raise MalformedInput("bytes must be a number", position=f"edges[{i}]")
        edges.append(DataEdge(str(raw["from"]), str(raw["to"]), nbytes))

    return validate(tasks, edges)


def serialize(workflow: Workflow) -> str:
    """Native JSON text for a workflow; synthetic nodes are omitted."""
    real = set(workflow.real_task_ids)
    doc = {
        "tasks": [
            {"id": t.id, "workload": t.workload, **({"label": t.label} if t.label else {})}
            for t in (workflow.tasks[i] for i in workflow.real_task_ids)
        ],
        "edges": [
            {"from": u, "to": v, "bytes": b}
            for (u, v), b in sorted(workflow.edges.items())
            if u in real and v in real
        ],
    }
    return json.dumps(doc, indent=2)


# --- synthetic topology generators --------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    """Ranges for seeded log-uniform workload and file-size draws."""

    workload_range: tuple[float, float] = (1.0, 100.0)
    bytes_range: tuple[float, float] = (1e6, 1e9)


SHAPES = (
    "montage-like",
    "epigenomics-like",
    "inspiral-like",
    "cybershake-like",
    "sipht-like",
    "pipeline",
    "fork-join",
)


def _chain_edges(ids):
    return [(a, b) for a, b in zip(ids, ids[1:])]


def _topology(shape: str, n: int) -> tuple[list[str], list[tuple[str, str]]]:
    ids = [f"t{i:04d}" for i in range(n)]
    edges: list[tuple[str, str]] = []

    if shape == "pipeline":
        edges = _chain_edges(ids)

    elif shape == "fork-join":
        for mid in ids[1:-1]:
            edges.append((ids[0], mid))
            edges.append((mid, ids[-1]))

    elif shape == "montage-like":
        # parallel readers, an overlap layer, one high-fan-in join, a tail chain
        m = max(2, n // 4)
        if n < 2 * m + 2:
            m = max(1, (n - 2) // 2)
        srcs, layer2 = ids[:m], ids[m : 2 * m]
        join = ids[2 * m]
        tail = ids[2 * m :]
        for j, t in enumerate(layer2):
            for k in range(max(0, j - 1), min(m, j + 2)):
                edges.append((srcs[k], t))
            edges.append((t, join))
        edges += _chain_edges(tail)

    elif shape == "epigenomics-like":
        # one head fanning into parallel chains that merge into a tail chain
        b = max(2, n // 6)
        body = n - 2
        depth = max(1, (body - 1) // b)
        head = ids[0]
        pos = 1
        branch_ends = []
        for _ in range(b):
            if pos + depth > n - 1:
                break
            branch = ids[pos : pos + depth]
            pos += depth
            edges.append((head, branch[0]))
            edges += _chain_edges(branch)
            branch_ends.append(branch[-1])
        tail = ids[pos:]
        if not tail:
            tail = [branch_ends.pop()]
        for end in branch_ends:
            edges.append((end, tail[0]))
        if not branch_ends and head != tail[0] and (head, tail[0]) not in edges:
            edges.append((head, tail[0]))
        edges += _chain_edges(tail)

    elif shape == "inspiral-like":
        # paired pre-processing chains joined per group, re-fanned, re-collected
        w = (n - 5) // 4
        if w < 1:
            return _topology("fork-join", n)
        a = ids[:w]
        bnodes = ids[w : 2 * w]
        joins = ids[2 * w : 2 * w + 2]
        e = ids[2 * w + 2 : 3 * w + 2]
        f = ids[3 * w + 2 : 4 * w + 2]
        collect = ids[4 * w + 2 : 4 * w + 4]
        final = ids[4 * w + 4]
        tail = ids[4 * w + 4 :]
        half = (w + 1) // 2
        for i in range(w):
            g = 0 if i < half else 1
            edges.append((a[i], bnodes[i]))
            edges.append((bnodes[i], joins[g]))
            edges.append((joins[g], e[i]))
            edges.append((e[i], f[i]))
            edges.append((f[i], collect[g]))
        for c in collect:
            edges.append((c, final))
        edges += _chain_edges(tail)

    elif shape == "cybershake-like":
        # two spreaders, leaf pairs, one shared hub, one collector
        a = (n - 4) // 4
        if a < 1:
            return _topology("fork-join", n)
        spread = ids[:2]
        leaves = ids[2 : 2 + 2 * a]
        partners = ids[2 + 2 * a : 2 + 4 * a]
        hub = ids[2 + 4 * a]
        tail = ids[2 + 4 * a :]
        for i, leaf in enumerate(leaves):
            edges.append((spread[0 if i < a else 1], leaf))
            edges.append((leaf, partners[i]))
            edges.append((leaf, hub))
            edges.append((partners[i], tail[-1] if len(tail) > 1 else hub))
        edges += _chain_edges(tail)

    elif shape == "sipht-like":
        # one wide fan-in aggregator plus a small side cluster, common sink
        f = max(2, n // 2)
        c = max(1, n // 6)
        rest = n - f - c - 3
        if rest < 0:
            return _topology("fork-join", n)
        fans = ids[:f]
        agg = ids[f]
        heads = ids[f + 1 : f + 1 + c]
        mid = ids[f + 1 + c]
        mids = ids[f + 2 + c : f + 2 + c + rest]
        sink = ids[-1]
        for t in fans:
            edges.append((t, agg))
        for t in heads:
            edges.append((t, mid))
        prev = mid
        for t in mids:
            edges.append((prev, t))
            prev = t
        edges.append((prev, sink))
        edges.append((agg, sink))

    else:
        raise UnknownShape(f"unknown shape {shape!r}; expected one of {SHAPES}")

    return ids, sorted(set(edges))


def generate(
    shape: str,
    n_tasks: int,
    seed: int,
    config: GeneratorConfig | None = None,
) -> Workflow:
    """Deterministic synthetic workflow of the given topology family.

    Workloads and edge file sizes are drawn log-uniformly from the config
    ranges with a generator seeded by `seed`; identical arguments always
    produce identical workflows.
    """
    if shape not in SHAPES:
        raise UnknownShape(f"unknown shape {shape!r}; expected one of {SHAPES}")
    if n_tasks < 3:
        raise TooSmall(f"need at least 3 tasks, got {n_tasks}")
    config = config or GeneratorConfig()

    ids, edge_pairs = _topology(shape, n_tasks)
    rng = np.random.default_rng(seed)

    lo, hi = config.workload_range
    workloads = np.exp(rng.uniform(np.log(lo), np.log(hi), size=len(ids)))
    lo_b, hi_b = config.bytes_range
    sizes = np.exp(rng.uniform(np.log(lo_b), np.log(hi_b), size=len(edge_pairs)))

    tasks = [Task(tid, float(w)) for tid, w in zip(ids, workloads)]
    edges = [DataEdge(u, v, float(round(b))) for (u, v), b in zip(edge_pairs, sizes)]
    return validate(tasks, edges)
