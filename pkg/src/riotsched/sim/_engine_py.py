"""Pure-Python event loop for the cluster simulator.

Mirrors _engine_c.pyx operation for operation so both engines produce
bit-identical start/finish times.  Keep the two in sync.
"""

from __future__ import annotations

import numpy as np

INF = float("inf")


def run(n_tasks, n_clusters, cluster_indptr, cluster_tasks, n_preds, succ_indptr, succ_indices, dur):
    """Execute the schedule; returns (start_times, finish_times).

    cluster_tasks holds task indices grouped per cluster (CSR layout via
    cluster_indptr), each group sorted by secondary-order position.  A
    cluster is one VM running one task at a time; an idle VM picks the
    ready task earliest in secondary order.
    """
    remaining = [int(x) for x in n_preds]
    st = np.zeros(n_tasks)
    ft = np.zeros(n_tasks)
    started = [False] * n_tasks
    running = [-1] * n_clusters
    busy_until = [0.0] * n_clusters
    head = [int(cluster_indptr[c]) for c in range(n_clusters)]
    indptr = [int(x) for x in cluster_indptr]
    ctasks = [int(x) for x in cluster_tasks]
    sindptr = [int(x) for x in succ_indptr]
    sidx = [int(x) for x in succ_indices]
    durs = [float(x) for x in dur]

    n_done = 0
    t = 0.0
    while n_done < n_tasks:
        for c in range(n_clusters):
            if running[c] != -1:
                continue
            k = head[c]
            end = indptr[c + 1]
            while k < end and started[ctasks[k]]:
                k += 1
            head[c] = k
            while k < end:
                ti = ctasks[k]
                if not started[ti] and remaining[ti] == 0:
                    started[ti] = True
                    st[ti] = t
                    running[c] = ti
                    busy_until[c] = t + durs[ti]
                    break
                k += 1

        t_next = INF
        for c in range(n_clusters):
            if running[c] != -1 and busy_until[c] < t_next:
                t_next = busy_until[c]
        if t_next == INF:
            raise RuntimeError("simulation stalled: no runnable task")
        t = t_next
        for c in range(n_clusters):
            if running[c] != -1 and busy_until[c] == t:
                ti = running[c]
                ft[ti] = t
                running[c] = -1
                n_done += 1
                for k in range(sindptr[ti], sindptr[ti + 1]):
                    remaining[sidx[k]] -= 1
    return st, ft
