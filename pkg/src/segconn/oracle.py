"""Brute-force reference: discretize each segment, try every placement,
and take the best threshold-graph bottleneck.

The result overestimates the true optimum by at most max(segment length)/m
because the bottleneck is 1-Lipschitz in each placed point and a grid of
m+1 points leaves gaps of length/m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .decision import Instance
from .geometry import Point

PLACEMENT_GUARD = 10**7


@dataclass(frozen=True)
class OracleResult:
    value: float
    error_bound: float
    best_placement: Tuple[Point, ...]


def _batched_bottleneck(batch: np.ndarray) -> np.ndarray:
    """Max MST edge length for each point set in batch (B, n, 2), by Prim."""
    b, n, _ = batch.shape
    if n <= 1:
        return np.zeros(b)
    in_tree = np.zeros((b, n), dtype=bool)
    in_tree[:, 0] = True
    diff = batch - batch[:, 0:1, :]
    best = np.hypot(diff[:, :, 0], diff[:, :, 1])
    bottleneck = np.zeros(b)
    rows = np.arange(b)
    for _ in range(n - 1):
        masked = np.where(in_tree, np.inf, best)
        v = np.argmin(masked, axis=1)
        bottleneck = np.maximum(bottleneck, masked[rows, v])
        in_tree[rows, v] = True
        new_pts = batch[rows, v]
        diff = batch - new_pts[:, None, :]
        dv = np.hypot(diff[:, :, 0], diff[:, :, 1])
        best = np.minimum(best, dv)
    return bottleneck


def mbst_bottleneck(points: Sequence[Point]) -> float:
    """Minimum delta making the threshold graph connected (max MST edge)."""
    if len(points) == 0:
        raise ValueError("mbst_bottleneck on empty point set")
    arr = np.array([[[p.x, p.y] for p in points]], dtype=np.float64)
    return float(_batched_bottleneck(arr)[0])


def oracle_delta_star(instance: Instance, m: int) -> OracleResult:
    """Exhaustive search over a uniform (m+1)-point grid per segment."""
    if m < 1:
        raise ValueError("grid count must be >= 1")
    k = instance.k
    if (m + 1) ** k > PLACEMENT_GUARD:
        raise ValueError(f"(m+1)^k = {(m + 1) ** k} exceeds guard {PLACEMENT_GUARD}")
    fixed = np.array([[p.x, p.y] for p in instance.points], dtype=np.float64)
    if k == 0:
        value = mbst_bottleneck(instance.points)
        return OracleResult(value, 0.0, ())

    grids: List[np.ndarray] = []
    for seg in instance.segments:
        ts = np.linspace(seg.lo, seg.hi, m + 1)
        pts = np.stack(
            [seg.anchor.x + ts * seg.dir.x, seg.anchor.y + ts * seg.dir.y], axis=1
        )
        grids.append(pts)
    combos = list(itertools.product(*[range(m + 1) for _ in range(k)]))
    batch = np.empty((len(combos), k + len(instance.points), 2))
    for row, combo in enumerate(combos):
        for s, gi in enumerate(combo):
            batch[row, s] = grids[s][gi]
        batch[row, k:] = fixed
    # chunk to bound memory for large grids
    values = np.empty(len(combos))
    chunk = 20000
    for start in range(0, len(combos), chunk):
        values[start : start + chunk] = _batched_bottleneck(batch[start : start + chunk])
    best_row = int(np.argmin(values))
    best = [Point(float(x), float(y)) for x, y in batch[best_row, :k]]
    bound = max((seg.length / m for seg in instance.segments), default=0.0)
    return OracleResult(float(values[best_row]), bound, tuple(best))
