"""Decision procedure: can one point per segment be chosen so that the
unit-threshold graph on all points is connected at a given delta?

The procedure preprocesses the fixed points once (MST, component families
obtained by peeling the longest MST edges, and Voronoi diagrams of each
component on each segment) and then answers any delta query by iterating
over candidate topology trees and running the interval DP of the
significant subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .emst import (
    ABS_SLACK,
    REL_SLACK,
    Mst,
    compute_emst,
    longest_edges,
    within_threshold,
)
from .geometry import (
    EPS_COORD,
    ParamSegment,
    Point,
    Segmentation,
    VoronoiOnSegment,
    intersect_disk_segment,
    intersect_neighborhood_segmentation_segment,
    intersect_segmentations,
    intersect_union_disks_segment,
    voronoi_on_segment,
)
from .topology import SignificantSubtree, TopologyTree, decompose_significant, enumerate_topology_trees

ComponentKey = Tuple[int, ...]


@dataclass(frozen=True)
class Instance:
    segments: Tuple[ParamSegment, ...]
    points: Tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.points) < 1:
            raise ValueError("instance needs at least one fixed point")

    @property
    def k(self) -> int:
        return len(self.segments)

    @property
    def n(self) -> int:
        return len(self.segments) + len(self.points)


def effective_radius(delta: float) -> float:
    """Inflated radius implementing the <= delta comparison slack."""
    return delta * (1.0 + REL_SLACK) + ABS_SLACK


@dataclass
class Preprocessing:
    mst: Mst
    top_edges: List[float]                       # descending, length min(n-k-1, 4k+1)
    families: List[List[ComponentKey]]           # families[i]: components of T minus i longest edges
    voronoi_cache: Dict[Tuple[ComponentKey, int], VoronoiOnSegment]
    instance: Instance

    def family_index(self, delta: float) -> int:
        """Number of MST edges longer than delta (capped family peeling)."""
        i = 0
        for length in (e[2] for e in self.mst.edges):
            if within_threshold(length, delta):
                break
            i += 1
        return i

    def voronoi(self, comp: ComponentKey, seg_index: int) -> VoronoiOnSegment:
        # identity fast path: components handed out by this Preprocessing
        # are the exact tuples stored in the families, and hashing a large
        # component tuple on every query would cost O(n)
        key = (id(comp), seg_index)
        hit = self._voronoi_by_id.get(key)
        if hit is not None:
            return hit
        return self.voronoi_cache[(comp, seg_index)]

    def __post_init__(self) -> None:
        self._voronoi_by_id = {
            (id(comp), si): vor for (comp, si), vor in self.voronoi_cache.items()
        }


def preprocess(instance: Instance) -> Preprocessing:
    mst = compute_emst(instance.points)
    k = instance.k
    n_fixed = len(instance.points)
    m = min(n_fixed - 1, 4 * k + 1)
    tops = longest_edges(mst, m)

    # peel the i longest edges for i = 0..m; components stay sorted by
    # smallest member so the families are nested refinements
    families: List[List[ComponentKey]] = []
    adj: Dict[int, List[int]] = {v: [] for v in range(n_fixed)}
    for i, j, _ in mst.edges:
        adj[i].append(j)
        adj[j].append(i)

    def components_without(removed: set) -> List[ComponentKey]:
        seen = [False] * n_fixed
        comps: List[ComponentKey] = []
        for start in range(n_fixed):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    e = (min(v, w), max(v, w))
                    if e in removed or seen[w]:
                        continue
                    seen[w] = True
                    stack.append(w)
            comps.append(tuple(sorted(comp)))
        comps.sort(key=lambda c: c[0])
        return comps

    removed: set = set()
    families.append(components_without(removed))
    for i, j, _ in mst.edges[:m]:
        removed.add((i, j))
        families.append(components_without(removed))

    # canonicalize equal component tuples across families so that cache
    # lookups can use object identity instead of O(n) tuple hashing
    canon: Dict[ComponentKey, ComponentKey] = {}
    for family in families:
        for i, comp in enumerate(family):
            family[i] = canon.setdefault(comp, comp)

    cache: Dict[Tuple[ComponentKey, int], VoronoiOnSegment] = {}
    distinct = set(canon.values())
    for comp in distinct:
        sites = [instance.points[v] for v in comp]
        for si, seg in enumerate(instance.segments):
            cache[(comp, si)] = voronoi_on_segment(sites, seg)
    return Preprocessing(mst, tops, families, cache, instance)


def decide_zero(instance: Instance) -> bool:
    """delta = 0: all fixed points must coincide and lie on every segment."""
    p0 = instance.points[0]
    if any(p.dist(p0) > EPS_COORD for p in instance.points[1:]):
        return False
    return all(seg.distance_to_point(p0) <= EPS_COORD for seg in instance.segments)


def full_segmentation(seg: ParamSegment) -> Segmentation:
    return Segmentation(seg.anchor, seg.dir, ((seg.lo, seg.hi),))


def compute_X(
    seg_index: int,
    delta: float,
    instance: Instance,
    children_X: Sequence[Tuple[int, Segmentation]],
    component_vors: Sequence[VoronoiOnSegment],
) -> Segmentation:
    """Feasible positions on segment seg_index given the children results.

    children_X pairs (child segment index, its feasible set); component
    children enter through their Voronoi diagrams on this segment.
    """
    seg = instance.segments[seg_index - 1]
    radius = effective_radius(delta)
    result = full_segmentation(seg)
    for _, child_set in children_X:
        if result.is_empty:
            return result
        y = intersect_neighborhood_segmentation_segment(child_set, radius, seg)
        result = intersect_segmentations(result, y)
    for vor in component_vors:
        if result.is_empty:
            return result
        z = intersect_union_disks_segment(vor, radius, seg)
        result = intersect_segmentations(result, z)
    return result


@dataclass
class _TreeContext:
    prep: Preprocessing
    delta: float
    family: List[ComponentKey]

    def comp_of_node(self, tau_k: int, node: int) -> ComponentKey:
        return self.family[node - tau_k - 1]


def _subtree_feasible_sets(
    sub: SignificantSubtree, tau: TopologyTree, ctx: _TreeContext
) -> Optional[Dict[int, Segmentation]]:
    """Bottom-up X sets for one significant subtree; None once the root
    (or any needed set) is empty."""
    children = sub.children_map()
    sets: Dict[int, Segmentation] = {}
    for s in sub.postorder_segments(tau.k):
        seg_children = [
            (c, sets[c]) for c in children.get(s, ()) if tau.is_segment(c)
        ]
        comp_vors = [
            ctx.prep.voronoi(ctx.comp_of_node(tau.k, c), s - 1)
            for c in children.get(s, ())
            if not tau.is_segment(c)
        ]
        x = compute_X(s, ctx.delta, ctx.prep.instance, seg_children, comp_vors)
        if x.is_empty and s != sub.root:
            return None
        sets[s] = x
    if sets[sub.root].is_empty:
        return None
    return sets


def realizable(tau: TopologyTree, delta: float, prep: Preprocessing) -> bool:
    family = prep.families[prep.family_index(delta)]
    ctx = _TreeContext(prep, delta, family)
    for sub in decompose_significant(tau):
        if _subtree_feasible_sets(sub, tau, ctx) is None:
            return False
    return True


def _component_link_ok(
    prep: Preprocessing, family: List[ComponentKey], delta: float
) -> List[List[bool]]:
    """conn[c][s]: some point of component c is within delta of segment s."""
    radius = effective_radius(delta)
    table: List[List[bool]] = []
    for comp in family:
        row = []
        for si, seg in enumerate(prep.instance.segments):
            vor = prep.voronoi(comp, si)
            z = intersect_union_disks_segment(vor, radius, seg)
            row.append(not z.is_empty)
        table.append(row)
    return table


@dataclass
class DecisionResult:
    connected: bool
    tree: Optional[TopologyTree] = None
    placement: Optional[List[Point]] = None


def decide(prep: Preprocessing, instance: Instance, delta: float) -> bool:
    return decide_full(prep, instance, delta).connected


def decide_full(
    prep: Preprocessing, instance: Instance, delta: float, want_witness: bool = False
) -> DecisionResult:
    if delta < 0.0:
        raise ValueError("negative delta")
    k = instance.k
    if delta == 0.0:
        ok = decide_zero(instance)
        placement = None
        if ok and want_witness:
            placement = [instance.points[0]] * k
        return DecisionResult(ok, placement=placement)
    fam_idx = prep.family_index(delta)
    ell = fam_idx + 1
    if ell > 4 * k + 1:
        return DecisionResult(False)
    if k == 0:
        return DecisionResult(ell == 1, placement=[] if (ell == 1 and want_witness) else None)
    family = prep.families[fam_idx]
    link_ok = _component_link_ok(prep, family, delta)
    ctx = _TreeContext(prep, delta, family)
    for tau in enumerate_topology_trees(k, ell):
        # cheap necessary filter: every component-segment edge must be linkable
        viable = True
        for u, v in tau.edges:
            if not tau.is_segment(v):
                if not link_ok[v - k - 1][u - 1]:
                    viable = False
                    break
        if not viable:
            continue
        subtrees = decompose_significant(tau)
        all_sets: List[Tuple[SignificantSubtree, Dict[int, Segmentation]]] = []
        ok = True
        for sub in subtrees:
            sets = _subtree_feasible_sets(sub, tau, ctx)
            if sets is None:
                ok = False
                break
            all_sets.append((sub, sets))
        if ok:
            placement = None
            if want_witness:
                placement = _extract_from_sets(tau, delta, instance, all_sets)
            return DecisionResult(True, tree=tau, placement=placement)
    return DecisionResult(False)


def _extract_from_sets(
    tau: TopologyTree,
    delta: float,
    instance: Instance,
    all_sets: List[Tuple[SignificantSubtree, Dict[int, Segmentation]]],
) -> List[Point]:
    # retry ladder: at a near-optimal delta the feasible sets are
    # degenerate and the bisection residue can exceed the decision slack;
    # every radius stays below the delta*(1+1e-9) soundness budget
    radii = [effective_radius(delta), delta * (1.0 + 1e-10), delta * (1.0 + 9e-10)]
    chosen: Dict[int, Point] = {}
    for sub, sets in all_sets:
        children = sub.children_map()
        root_set = sets[sub.root]
        t_root = root_set.leftmost()
        chosen[sub.root] = instance.segments[sub.root - 1].point_at(t_root)
        stack = [sub.root]
        while stack:
            s = stack.pop()
            p = chosen[s]
            for c in children.get(s, ()):
                if not tau.is_segment(c):
                    continue
                seg_c = instance.segments[c - 1]
                picked = None
                for radius in radii:
                    for a, b in sets[c].intervals:
                        piece = intersect_disk_segment(
                            p, radius, ParamSegment(seg_c.anchor, seg_c.dir, a, b)
                        )
                        if piece is not None:
                            picked = piece.lo
                            break
                    if picked is not None:
                        break
                if picked is None:
                    raise RuntimeError(
                        "witness extraction failed: child set out of reach"
                    )
                chosen[c] = seg_c.point_at(picked)
                stack.append(c)
    return [chosen[s] for s in range(1, tau.k + 1)]


def extract_witness(
    tau: TopologyTree, delta: float, prep: Preprocessing
) -> List[Point]:
    """Placement (one point per segment) certifying a realizable tree."""
    family = prep.families[prep.family_index(delta)]
    ctx = _TreeContext(prep, delta, family)
    all_sets = []
    for sub in decompose_significant(tau):
        sets = _subtree_feasible_sets(sub, tau, ctx)
        if sets is None:
            raise ValueError("extract_witness on a non-realizable tree")
        all_sets.append((sub, sets))
    return _extract_from_sets(tau, delta, prep.instance, all_sets)


def threshold_graph_connected(points: Sequence[Point], delta: float) -> bool:
    """Union-find connectivity of the threshold graph at delta."""
    n = len(points)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if points[i].dist(points[j]) <= delta:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    return len({find(v) for v in range(n)}) <= 1
