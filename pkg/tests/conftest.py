import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from riotsched.catalog import default_catalog
from riotsched.sim import Schedule
from riotsched.workflow import DataEdge, Task, validate


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


def pytest_terminal_summary(terminalreporter):
    # re-emit the acceptance verdict lines after capture ends so they are
    # visible in any pytest run, not just with -s
    verdicts = sys.modules.get("test_acceptance")
    if verdicts and getattr(verdicts, "VERDICTS", None):
        terminalreporter.section("acceptance criteria")
        for line in verdicts.VERDICTS:
            terminalreporter.write_line(line)


def make_fig2():
    """Seven-task diamond: Ts -> {1,2} -> {3,4} -> 5 -> Te."""
    tasks = [Task(t, 1.0) for t in ["Ts", "1", "2", "3", "4", "5", "Te"]]
    edges = [
        DataEdge(*e, 0.0)
        for e in [("Ts", "1"), ("Ts", "2"), ("1", "3"), ("2", "4"), ("3", "5"), ("4", "5"), ("5", "Te")]
    ]
    return validate(tasks, edges)


def make_fig3():
    """Start, three parallel 3-chains, a fan-in join, and an exit."""
    names = ["Ts", "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3", "d", "Te"]
    tasks = [Task(t, 1.0) for t in names]
    pairs = [("Ts", "a1"), ("Ts", "b1"), ("Ts", "c1")]
    for ch in "abc":
        pairs += [(f"{ch}1", f"{ch}2"), (f"{ch}2", f"{ch}3"), (f"{ch}3", "d")]
    pairs.append(("d", "Te"))
    return validate(tasks, [DataEdge(u, v, 0.0) for u, v in pairs])


@pytest.fixture
def fig2():
    return make_fig2()


@pytest.fixture
def fig3():
    return make_fig3()


def random_workflow(rng, n_tasks=None, max_bytes=5e8):
    """Small random DAG for fuzzing; edges only go forward in id order."""
    n = n_tasks or int(rng.integers(3, 9))
    tasks = [Task(f"t{i}", float(np.round(rng.uniform(0.5, 50.0), 3))) for i in range(n)]
    edges = []
    for j in range(1, n):
        preds = rng.choice(j, size=int(rng.integers(1, min(j, 3) + 1)), replace=False)
        for i in preds:
            edges.append(DataEdge(f"t{int(i)}", f"t{j}", float(rng.integers(0, max_bytes))))
    return validate(tasks, edges)


def random_schedule(workflow, catalog, rng, max_clusters=3):
    from riotsched.riot import b_rank

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
