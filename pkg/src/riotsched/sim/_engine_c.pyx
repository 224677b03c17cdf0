# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled event loop for the cluster simulator.

Must stay operation-for-operation identical to _engine_py.run so the two
engines produce bit-identical results.
"""

import numpy as np


def run(long n_tasks, long n_clusters,
        long[::1] cluster_indptr, long[::1] cluster_tasks,
        long[::1] n_preds, long[::1] succ_indptr, long[::1] succ_indices,
        double[::1] dur):
    st_arr = np.zeros(n_tasks)
    ft_arr = np.zeros(n_tasks)
    remaining_arr = np.asarray(n_preds).copy()
    started_arr = np.zeros(n_tasks, dtype=np.int8)
    running_arr = np.full(n_clusters, -1, dtype=np.int64)
    busy_arr = np.zeros(n_clusters)
    head_arr = np.asarray(cluster_indptr)[:n_clusters].copy()

    cdef double[::1] st = st_arr
    cdef double[::1] ft = ft_arr
    cdef long[::1] remaining = remaining_arr
    cdef signed char[::1] started = started_arr
    cdef long[::1] running = running_arr
    cdef double[::1] busy_until = busy_arr
    cdef long[::1] head = head_arr

    cdef long n_done = 0
    cdef double t = 0.0, t_next
    cdef long c, k, end, ti
    cdef double inf = float("inf")

    while n_done < n_tasks:
        for c in range(n_clusters):
            if running[c] != -1:
                continue
            k = head[c]
            end = cluster_indptr[c + 1]
            while k < end and started[cluster_tasks[k]]:
                k += 1
            head[c] = k
            while k < end:
                ti = cluster_tasks[k]
                if not started[ti] and remaining[ti] == 0:
                    started[ti] = 1
                    st[ti] = t
                    running[c] = ti
                    busy_until[c] = t + dur[ti]
                    break
                k += 1

        t_next = inf
        for c in range(n_clusters):
            if running[c] != -1 and busy_until[c] < t_next:
                t_next = busy_until[c]
        if t_next == inf:
            raise RuntimeError("simulation stalled: no runnable task")
        t = t_next
        for c in range(n_clusters):
            if running[c] != -1 and busy_until[c] == t:
                ti = running[c]
                ft[ti] = t
                running[c] = -1
                n_done += 1
                for k in range(succ_indptr[ti], succ_indptr[ti + 1]):
                    remaining[succ_indices[k]] -= 1
    return st_arr, ft_arr
