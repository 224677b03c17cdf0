"""Pareto utilities and frontier-quality measures.

Dominance is minimization in both objectives with at least one strict
inequality.  Hypervolume, IGD and spread all operate on points normalized
to the unit square with bounds shared by every frontier under comparison;
the reference point for hypervolume is (1, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import DegenerateBounds, EmptyInput, NotEnoughPoints, OutOfRange


@dataclass(frozen=True)
class ObjectivePoint:
    makespan: float
    cost: float
    tag: Any = None
    clamped: bool = False


@dataclass(frozen=True)
class Frontier:
    points: tuple[ObjectivePoint, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def dominates(p: ObjectivePoint, q: ObjectivePoint) -> bool:
    """True iff p is at least as good in both objectives and better in one."""
    return (
        p.makespan <= q.makespan
        and p.cost <= q.cost
        and (p.makespan < q.makespan or p.cost < q.cost)
    )


def nondominated(points: Sequence[ObjectivePoint]) -> Frontier:
    """Non-dominated subset; points with identical objectives all survive."""
    if not points:
        raise EmptyInput("no points to filter")
    order = sorted(range(len(points)), key=lambda i: (points[i].makespan, points[i].cost))
    keep = []
    best_cost = float("inf")  # min cost among strictly smaller makespans
    i = 0
    while i < len(order):
        # group of equal makespan
        j = i
        m = points[order[i]].makespan
        while j < len(order) and points[order[j]].makespan == m:
            j += 1
        group = order[i:j]
        min_cost = points[group[0]].cost  # group sorted by cost
        if min_cost < best_cost:
            keep.extend(k for k in group if points[k].cost == min_cost)
            best_cost = min_cost
        i = j
    keep.sort()
    return Frontier(tuple(points[k] for k in keep))


@dataclass(frozen=True)
class Bounds:
    makespan: tuple[float, float]
    cost: tuple[float, float]


def shared_bounds(*frontiers: Sequence[ObjectivePoint]) -> Bounds:
    """Per-objective (min, max) over the union of all compared frontiers."""
    pts = [p for f in frontiers for p in f]
    if not pts:
        raise EmptyInput("no points for bounds")
    ms = [p.makespan for p in pts]
    cs = [p.cost for p in pts]
    return Bounds((min(ms), max(ms)), (min(cs), max(cs)))


def normalize(points: Sequence[ObjectivePoint], bounds: Bounds) -> list[ObjectivePoint]:
    """Affine map onto [0,1]^2; out-of-bounds values clamp and are flagged."""
    for name, (lo, hi) in (("makespan", bounds.makespan), ("cost", bounds.cost)):
        if hi <= lo:
            raise DegenerateBounds(f"{name} bounds have max <= min: ({lo}, {hi})")
    out = []
    for p in points:
        m = (p.makespan - bounds.makespan[0]) / (bounds.makespan[1] - bounds.makespan[0])
        c = (p.cost - bounds.cost[0]) / (bounds.cost[1] - bounds.cost[0])
        clamped = not (0.0 <= m <= 1.0 and 0.0 <= c <= 1.0)
        out.append(
            ObjectivePoint(min(1.0, max(0.0, m)), min(1.0, max(0.0, c)), tag=p.tag, clamped=clamped)
        )
    return out


def _check_unit_square(points: Sequence[ObjectivePoint]) -> None:
    for p in points:
        if not (0.0 <= p.makespan <= 1.0 and 0.0 <= p.cost <= 1.0):
            raise OutOfRange(f"point ({p.makespan}, {p.cost}) outside the unit square")


def hypervolume(points: Sequence[ObjectivePoint]) -> float:
    """Exact dominated area between the frontier and reference point (1, 1)."""
    if not points:
        raise EmptyInput("no points for hypervolume")
    _check_unit_square(points)
    pts = sorted((p.makespan, p.cost) for p in points)
    hv = 0.0
    best = float("inf")
    xs, ys = [], []
    for m, c in pts:
        if c < best:
            best = c
            xs.append(m)
            ys.append(c)
    for k, (m, c) in enumerate(zip(xs, ys)):
        nxt = xs[k + 1] if k + 1 < len(xs) else 1.0
        hv += (nxt - m) * (1.0 - c)
    return hv


def igd(
    frontier: Sequence[ObjectivePoint],
    reference_front: Sequence[ObjectivePoint],
    direction: str = "reference-to-obtained",
) -> float:
    """Mean distance from each reference point to its nearest frontier point.

    direction="obtained-to-reference" averages over the obtained frontier
    instead (the generational-distance orientation).
    """
    if not frontier or not reference_front:
        raise EmptyInput("igd needs non-empty frontier and reference")
    a = np.array([(p.makespan, p.cost) for p in frontier])
    b = np.array([(p.makespan, p.cost) for p in reference_front])
    if direction == "obtained-to-reference":
        a, b = b, a
    elif direction != "reference-to-obtained":
        raise ValueError(f"unknown igd direction {direction!r}")
    d = np.sqrt(((b[:, None, :] - a[None, :, :]) ** 2).sum(axis=2))
    return float(d.min(axis=1).mean())


def spread(points: Sequence[ObjectivePoint]) -> float:
    """Gap uniformity along the frontier: deviation of consecutive
    Euclidean gaps divided by the mean gap.  0 means evenly spaced;
    needs at least two points."""
    if len(points) < 2:
        raise NotEnoughPoints("spread needs at least 2 frontier points")
    _check_unit_square(points)
    pts = sorted((p.makespan, p.cost) for p in points)
    gaps = [
        float(np.hypot(b[0] - a[0], b[1] - a[1])) for a, b in zip(pts, pts[1:])
    ]
    mean = sum(gaps) / len(gaps)
    if mean == 0.0:
        return 0.0
    dev = sum(abs(g - mean) for g in gaps) / len(gaps)
    return dev / mean
