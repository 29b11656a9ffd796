"""Euclidean minimum spanning tree of the fixed points and the component
structure obtained by dropping edges longer than a threshold."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .geometry import Point

# Slack applied to every "distance <= delta" test so that the attained
# optimum delta* itself decides TRUE despite rounding.
REL_SLACK = 1e-12
ABS_SLACK = 1e-15


def within_threshold(dist: float, delta: float) -> bool:
    return dist <= delta * (1.0 + REL_SLACK) + ABS_SLACK


@dataclass(frozen=True)
class Mst:
    points: Tuple[Point, ...]
    # (i, j, length) with i < j, sorted by descending length
    edges: Tuple[Tuple[int, int, float], ...]

    @property
    def bottleneck(self) -> float:
        return self.edges[0][2] if self.edges else 0.0


@dataclass(frozen=True)
class ComponentSet:
    partition: Tuple[Tuple[int, ...], ...]
    threshold: float

    @property
    def count(self) -> int:
        return len(self.partition)


def compute_emst(points: Sequence[Point]) -> Mst:
    """MST of the complete Euclidean graph, by Prim with a linear scan.

    Ties are broken by smallest vertex index, so the edge set is
    deterministic.  Duplicate points yield zero-length edges.
    """
    n = len(points)
    if n == 0:
        raise ValueError("compute_emst on empty point set")
    if n == 1:
        return Mst(tuple(points), ())
    xy = np.array([[p.x, p.y] for p in points], dtype=np.float64)
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    best_from = np.zeros(n, dtype=np.int64)
    in_tree[0] = True
    d0 = np.hypot(xy[:, 0] - xy[0, 0], xy[:, 1] - xy[0, 1])
    best = d0
    edges: List[Tuple[int, int, float]] = []
    for _ in range(n - 1):
        masked = np.where(in_tree, np.inf, best)
        v = int(np.argmin(masked))
        u = int(best_from[v])
        i, j = (u, v) if u < v else (v, u)
        edges.append((i, j, float(best[v])))
        in_tree[v] = True
        dv = np.hypot(xy[:, 0] - xy[v, 0], xy[:, 1] - xy[v, 1])
        closer = dv < best
        best = np.where(closer, dv, best)
        best_from = np.where(closer, v, best_from)
    edges.sort(key=lambda e: (-e[2], e[0], e[1]))
    return Mst(tuple(points), tuple(edges))


def split_components(mst: Mst, delta: float) -> ComponentSet:
    """Connected components of the MST restricted to edges <= delta."""
    if delta < 0.0:
        raise ValueError("negative delta")
    n = len(mst.points)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j, length in mst.edges:
        if within_threshold(length, delta):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    parts = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
    return ComponentSet(tuple(parts), delta)


def longest_edges(mst: Mst, m: int) -> List[float]:
    """The min(m, n-1) largest MST edge lengths, descending."""
    if m < 0:
        raise ValueError("negative count")
    return [e[2] for e in mst.edges[:m]]
