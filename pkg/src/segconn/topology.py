"""Enumeration of topology trees and their significant subtrees.

A topology tree connects k segment nodes (ids 1..k) and ell component
nodes (ids k+1..k+ell) into a spanning tree where segment nodes have
degree at most 5 and no two component nodes are adjacent.  Splitting at
component nodes yields the significant subtrees processed independently
by the feasibility DP.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

MAX_SEGMENT_DEGREE = 5

Edge = Tuple[int, int]


@dataclass(frozen=True)
class TopologyTree:
    k: int
    ell: int
    edges: Tuple[Edge, ...]  # (u, v) with u < v, sorted

    def is_segment(self, node: int) -> bool:
        return 1 <= node <= self.k

    def validate(self) -> None:
        n = self.k + self.ell
        if len(self.edges) != n - 1:
            raise ValueError("edge count is not nodes - 1")
        deg = {v: 0 for v in range(1, n + 1)}
        parent = list(range(n + 1))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            if not (self.is_segment(u) or self.is_segment(v)):
                raise ValueError(f"component-component edge {u}-{v}")
            deg[u] += 1
            deg[v] += 1
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("cycle in topology tree")
            parent[ru] = rv
        for s in range(1, self.k + 1):
            if deg[s] > MAX_SEGMENT_DEGREE:
                raise ValueError(f"segment node {s} has degree {deg[s]}")

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in range(1, self.k + self.ell + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


@dataclass(frozen=True)
class SignificantSubtree:
    """A maximal piece of a topology tree between component cut-nodes,
    rooted at its lowest-id segment node."""

    root: int
    nodes: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    parent: Tuple[Tuple[int, int], ...]       # child -> parent, root excluded
    children: Tuple[Tuple[int, Tuple[int, ...]], ...]
    heights: Tuple[Tuple[int, int], ...]      # segment node -> subtree height

    def parent_map(self) -> Dict[int, int]:
        return dict(self.parent)

    def children_map(self) -> Dict[int, Tuple[int, ...]]:
        return dict(self.children)

    def heights_map(self) -> Dict[int, int]:
        return dict(self.heights)

    def postorder_segments(self, k: int) -> List[int]:
        """Segment nodes in child-before-parent order."""
        kids = self.children_map()
        order: List[int] = []

        def walk(v: int) -> None:
            for c in kids.get(v, ()):
                walk(c)
            if 1 <= v <= k:
                order.append(v)

        walk(self.root)
        return order


def _allowed_edges(k: int, ell: int) -> List[Edge]:
    edges: List[Edge] = []
    for u in range(1, k + 1):
        for v in range(u + 1, k + 1):
            edges.append((u, v))
    for u in range(1, k + 1):
        for v in range(k + 1, k + ell + 1):
            edges.append((u, v))
    return edges


def enumerate_topology_trees(k: int, ell: int) -> Iterator[TopologyTree]:
    """Yield every topology tree on k segment and ell component nodes once.

    Recursive include/exclude over the allowed edge list with union-find
    acyclicity, segment-degree caps and a connectivity completion check;
    deterministic order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not (1 <= ell <= 4 * k + 1):
        raise ValueError(f"ell={ell} outside [1, {4 * k + 1}]")
    yield from _enumerate_cached(k, ell)


@lru_cache(maxsize=64)
def _enumerate_cached(k: int, ell: int) -> Tuple[TopologyTree, ...]:
    n = k + ell
    allowed = _allowed_edges(k, ell)
    need = n - 1
    results: List[TopologyTree] = []
    chosen: List[Edge] = []
    deg = [0] * (n + 1)
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            a = parent[a]
        return a

    def feasible(idx: int) -> bool:
        # the remaining edges must still be able to join current components
        roots = {find(v) for v in range(1, n + 1)}
        missing = len(roots) - 1
        if missing > need - len(chosen):
            return False
        if missing == 0:
            return True
        joinable = set()
        for u, v in allowed[idx:]:
            if deg[u] >= MAX_SEGMENT_DEGREE and u <= k:
                continue
            if deg[v] >= MAX_SEGMENT_DEGREE and v <= k:
                continue
            ru, rv = find(u), find(v)
            if ru != rv:
                joinable.add((min(ru, rv), max(ru, rv)))
        # weak check: every isolated-in-the-future component must appear
        touched = {r for pair in joinable for r in pair}
        return roots <= touched or len(roots) == 1

    def rec(idx: int) -> None:
        if len(chosen) == need:
            if len({find(v) for v in range(1, n + 1)}) == 1:
                results.append(TopologyTree(k, ell, tuple(sorted(chosen))))
            return
        if idx >= len(allowed) or len(allowed) - idx < need - len(chosen):
            return
        u, v = allowed[idx]
        ru, rv = find(u), find(v)
        deg_ok = (u > k or deg[u] < MAX_SEGMENT_DEGREE) and (
            v > k or deg[v] < MAX_SEGMENT_DEGREE
        )
        if ru != rv and deg_ok:
            saved_parent = parent[ru]
            parent[ru] = rv
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            if feasible(idx + 1):
                rec(idx + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            parent[ru] = saved_parent
        if feasible(idx + 1):
            rec(idx + 1)

    rec(0)
    return tuple(results)


def decompose_significant(tau: TopologyTree) -> List[SignificantSubtree]:
    """Split a topology tree at its component nodes.

    Each subtree keeps the component nodes adjacent to its segment nodes;
    within a subtree every component node is a leaf.
    """
    adj = tau.adjacency()
    seen = set()
    subtrees: List[SignificantSubtree] = []
    for start in range(1, tau.k + 1):
        if start in seen:
            continue
        # connected component of segment nodes
        stack = [start]
        seg_nodes = set()
        while stack:
            v = stack.pop()
            if v in seg_nodes:
                continue
            seg_nodes.add(v)
            for w in adj[v]:
                if tau.is_segment(w) and w not in seg_nodes:
                    stack.append(w)
        seen |= seg_nodes
        nodes = set(seg_nodes)
        edges = set()
        for v in seg_nodes:
            for w in adj[v]:
                if tau.is_segment(w):
                    if v < w:
                        edges.add((v, w))
                else:
                    nodes.add(w)
                    edges.add((min(v, w), max(v, w)))
        root = min(seg_nodes)
        sub_adj: Dict[int, List[int]] = {v: [] for v in nodes}
        for u, v in edges:
            sub_adj[u].append(v)
            sub_adj[v].append(u)
        parent: Dict[int, int] = {}
        children: Dict[int, List[int]] = {v: [] for v in nodes}
        order = [root]
        visited = {root}
        qi = 0
        while qi < len(order):
            v = order[qi]
            qi += 1
            for w in sorted(sub_adj[v]):
                if w not in visited:
                    visited.add(w)
                    parent[w] = v
                    children[v].append(w)
                    order.append(w)
        heights: Dict[int, int] = {}
        for v in reversed(order):
            if not tau.is_segment(v):
                continue
            h = 0
            for c in children[v]:
                h = max(h, 1 + heights.get(c, 0))
            heights[v] = h
        subtrees.append(
            SignificantSubtree(
                root=root,
                nodes=tuple(sorted(nodes)),
                edges=tuple(sorted(edges)),
                parent=tuple(sorted(parent.items())),
                children=tuple(sorted((v, tuple(c)) for v, c in children.items())),
                heights=tuple(sorted(heights.items())),
            )
        )
    return subtrees
