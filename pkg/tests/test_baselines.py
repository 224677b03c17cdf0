import numpy as np
import pytest

from riotsched.baselines import Budget, heft_schedule, random_search
from riotsched.sim import simulate
from riotsched.workflow import DataEdge, Task, validate

from conftest import random_workflow


def counting_simulator(counter):
    def run(wf, sched, cat):
        counter[0] += 1
        return simulate(wf, sched, cat)

    return run


class TestBudget:
    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            Budget(0)

    def test_accepts_one(self):
        assert Budget(1).max_simulations == 1


class TestRandomSearch:
    def test_exact_simulation_count(self, fig3, catalog):
        calls = [0]
        random_search(fig3, catalog, Budget(37), np.random.default_rng(0), counting_simulator(calls))
        assert calls[0] == 37

    def test_int_budget_accepted(self, fig3, catalog):
        calls = [0]
        random_search(fig3, catalog, 5, np.random.default_rng(0), counting_simulator(calls))
        assert calls[0] == 5

    def test_deterministic(self, fig3, catalog):
        a = random_search(fig3, catalog, Budget(40), np.random.default_rng(3))
        b = random_search(fig3, catalog, Budget(40), np.random.default_rng(3))
        assert [(e.makespan, e.cost, e.schedule) for e in a] == [
            (e.makespan, e.cost, e.schedule) for e in b
        ]

    def test_frontier_nondominated_and_provenance(self, fig3, catalog):
        frontier = random_search(fig3, catalog, Budget(60), np.random.default_rng(1))
        assert frontier
        for e in frontier:
            assert e.provenance == "simulated"
            assert e.eta is None
        for a in frontier:
            for b in frontier:
                if a is not b:
                    assert not (
                        a.makespan <= b.makespan
                        and a.cost <= b.cost
                        and (a.makespan < b.makespan or a.cost < b.cost)
                    )

    def test_schedules_valid_under_fuzzing(self, catalog):
        # every schedule produced must simulate without error and report
        # objectives matching a fresh simulation
        rng = np.random.default_rng(2)
        for _ in range(50):
            wf = random_workflow(rng)
            for e in random_search(wf, catalog, Budget(10), rng):
                ev = simulate(wf, e.schedule, catalog)
                assert (ev.makespan, ev.cost) == (e.makespan, e.cost)
                assert e.n_vms == len(e.schedule.cluster_to_type)


class TestHeft:
    def test_single_point(self, fig3, catalog):
        frontier = heft_schedule(fig3, catalog)
        assert len(frontier) == 1
        assert frontier[0].provenance == "simulated"

    def test_deterministic(self, fig2, catalog):
        a = heft_schedule(fig2, catalog)
        b = heft_schedule(fig2, catalog)
        assert a == b

    def test_chain_goes_to_fastest_vm(self, catalog):
        # no data to move, so the greedy picks the highest-CU machine for
        # every task of a pure compute chain
        tasks = [Task(f"t{i}", 45.0) for i in range(4)]
        edges = [DataEdge(f"t{i}", f"t{i+1}", 0) for i in range(3)]
        wf = validate(tasks, edges)
        (entry,) = heft_schedule(wf, catalog)
        assert set(entry.schedule.cluster_to_type.values()) == {"m4.4xlarge"}
        assert entry.makespan == pytest.approx(4.0)

    def test_objectives_match_resimulation(self, catalog):
        rng = np.random.default_rng(4)
        for _ in range(20):
            wf = random_workflow(rng)
            (entry,) = heft_schedule(wf, catalog)
            ev = simulate(wf, entry.schedule, catalog)
            assert (ev.makespan, ev.cost) == (entry.makespan, entry.cost)

    def test_cluster_ids_contiguous(self, catalog):
        rng = np.random.default_rng(6)
        for _ in range(10):
            wf = random_workflow(rng, n_tasks=12)
            (entry,) = heft_schedule(wf, catalog)
            used = set(entry.schedule.cluster_to_type)
            assert used == set(range(len(used)))
