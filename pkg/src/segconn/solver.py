"""Optimization layer: compute the minimum threshold delta* at which some
placement of the uncertain points connects the graph.

Two modes:
  * solve_bisect: plain monotone bisection on the decision procedure.
  * solve_parametric: simulate the decision procedure at the unknown
    optimum, maintaining an interval (lo, hi] that always contains delta*.
    Candidate event values (neighborhood emptiness thresholds, endpoint
    crossings, Voronoi cell changes, segmentation-merge crossings) shrink
    the interval via binary search on the decider; interval endpoints are
    carried as nested square-root functions of delta.  A failed validity
    check falls back to bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .decision import (
    Instance,
    Preprocessing,
    _subtree_feasible_sets,
    _TreeContext,
    decide,
    decide_full,
    decide_zero,
)
from .geometry import (
    ParamSegment,
    Point,
    VoronoiOnSegment,
    intersect_union_disks_segment,
    stadium_segment_interval,
)
from .oracle import mbst_bottleneck
from .sqrtfunc import (
    DeltaInterval,
    DomainError,
    Event,
    Linear,
    SqrtFunc,
    SqrtNode,
    circle_track,
    constant,
    refine_among,
    root_between,
)
from .topology import decompose_significant, enumerate_topology_trees

SNAP_REL = 1e-9
SNAP_MAX_POINTS = 300
VALIDITY_TOL = 1e-9
MATCH_TOL = 1e-6
FUSE = 1e-12

# symbolic segmentation: interval endpoints as functions of delta,
# sorted by value on the current interval
SymSeg = List[Tuple[SqrtFunc, SqrtFunc]]


class ParametricFailure(RuntimeError):
    """Numeric breakdown of the parametric simulation (missing root
    bracket, endpoint that matches no boundary curve, or an interval that
    should have collapsed)."""


@dataclass
class SolveResult:
    value: float
    witness: List[Point]
    mode: str
    fallback: bool = False
    events_seen: int = 0


def initial_upper_bound(instance: Instance) -> float:
    """Bottleneck of an arbitrary placement (segment midpoints)."""
    pts = list(instance.points)
    for seg in instance.segments:
        pts.append(seg.point_at(0.5 * (seg.lo + seg.hi)))
    return mbst_bottleneck(pts)


def _snap_candidates(instance: Instance) -> List[float]:
    """Distances likely to equal delta* exactly on benign inputs."""
    vals = set()
    pts = instance.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            vals.add(pts[i].dist(pts[j]))
    seg_endpoints = [seg.endpoints() for seg in instance.segments]
    for si, seg in enumerate(instance.segments):
        for p in pts:
            vals.add(seg.distance_to_point(p))
            for q in seg_endpoints[si]:
                vals.add(p.dist(q))
        for sj in range(si + 1, len(instance.segments)):
            for q in seg_endpoints[sj]:
                vals.add(seg.distance_to_point(q))
            for q in seg_endpoints[si]:
                vals.add(instance.segments[sj].distance_to_point(q))
    return sorted(v for v in vals if v > 0.0)


def _snap(value: float, instance: Instance, decider: Callable[[float], bool]) -> float:
    if len(instance.points) > SNAP_MAX_POINTS:
        # quadratic candidate generation is a small-instance nicety
        return value
    band = SNAP_REL * max(1.0, abs(value))
    best = None
    for c in _snap_candidates(instance):
        if abs(c - value) <= band and (best is None or abs(c - value) < abs(best - value)):
            if decider(c):
                best = c
    return best if best is not None else value


def _cached_decider(prep: Preprocessing, instance: Instance) -> Callable[[float], bool]:
    cache: Dict[float, bool] = {}

    def decider(delta: float) -> bool:
        if delta not in cache:
            cache[delta] = decide(prep, instance, delta)
        return cache[delta]

    return decider


def solve_bisect(
    prep: Preprocessing, instance: Instance, tol: float = 1e-9
) -> SolveResult:
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if decide_zero(instance):
        return SolveResult(0.0, [instance.points[0]] * instance.k, "bisect")
    if instance.k == 0:
        return SolveResult(prep.mst.bottleneck, [], "bisect")
    decider = _cached_decider(prep, instance)
    lo, hi = 0.0, initial_upper_bound(instance)
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if decider(mid):
            hi = mid
        else:
            lo = mid
    value = _snap(hi, instance, decider)
    witness = decide_full(prep, instance, value, want_witness=True).placement
    return SolveResult(value, witness or [], "bisect")


# ---------------------------------------------------------------------------
# parametric search
# ---------------------------------------------------------------------------


@dataclass
class _Search:
    lo: float
    hi: float
    decider: Callable[[float], bool]
    subdivisions: int
    events: List[Event] = field(default_factory=list)

    def interval(self) -> DeltaInterval:
        return DeltaInterval(self.lo, self.hi)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def refine(self, events: Sequence[Event]) -> None:
        self.events.extend(events)
        iv = refine_among([e.value for e in events], self.interval(), self.decider)
        self.lo, self.hi = iv.lo, iv.hi


def _match_fn(
    candidates: Sequence[SqrtFunc], target: float, x: float
) -> SqrtFunc:
    """Pick the candidate function whose value at x matches target."""
    best: Optional[SqrtFunc] = None
    best_err = math.inf
    for fn in candidates:
        try:
            err = abs(fn(x) - target)
        except DomainError:
            continue
        if err < best_err:
            best, best_err = fn, err
    if best is None or best_err > MATCH_TOL * max(1.0, abs(target)):
        raise ParametricFailure(
            f"no boundary curve matches endpoint {target} (best error {best_err})"
        )
    return best


def _eval_pairs(sym: SymSeg, x: float) -> List[Tuple[float, float, SqrtFunc, SqrtFunc]]:
    rows = []
    for fa, fb in sym:
        a, b = fa(x), fb(x)
        if b < a:
            a, b = b, a
            fa, fb = fb, fa
        rows.append((a, b, fa, fb))
    rows.sort(key=lambda r: r[0])
    return rows


def _symbolic_Y(
    search: _Search,
    child_seg: ParamSegment,
    child_sym: SymSeg,
    host: ParamSegment,
    prov: Tuple[int, ...],
) -> Optional[SymSeg]:
    """Delta-neighborhood of a child feasible set intersected with host."""
    p_x, e_x = child_seg.anchor, child_seg.dir

    def eta_at(j: int, x: float) -> Optional[Tuple[float, float]]:
        fa, fb = child_sym[j]
        try:
            a, b = fa(x), fb(x)
        except DomainError:
            return None
        if b < a:
            a, b = b, a
        return stadium_segment_interval(p_x, e_x, a, b, x, host)

    w = search.hi - search.lo
    lo_probe = search.lo + w * 1e-7
    hi_probe = search.hi - w * 1e-7
    events: List[Event] = []
    for j in range(len(child_sym)):
        if eta_at(j, hi_probe) is None:
            continue
        if eta_at(j, lo_probe) is not None:
            continue
        a, b = lo_probe, hi_probe
        while b - a > 1e-13 * max(1.0, b):
            m = 0.5 * (a + b)
            if eta_at(j, m) is None:
                a = m
            else:
                b = m
        events.append(Event(b, "neighborhood-emptiness", prov + (j,)))
    search.refine(events)

    mid = search.mid
    alive = [j for j in range(len(child_sym)) if eta_at(j, mid) is not None]
    if not alive:
        return None

    # boundary-curve candidates shared by every eta on this host segment
    wvec = host.anchor - p_x
    cu, du = wvec.dot(e_x), host.dir.dot(e_x)
    cv, dv = e_x.cross(wvec), e_x.cross(host.dir)
    fns: Dict[int, Tuple[SqrtFunc, SqrtFunc]] = {}
    for j in alive:
        fa, fb = child_sym[j]
        cands: List[SqrtFunc] = [constant(host.lo), constant(host.hi)]
        if abs(dv) > 1e-12:
            for sgn in (1.0, -1.0):
                cands.append(Linear(sgn / dv, -cv / dv))
        if abs(du) > 1e-12:
            for g in (fa, fb):
                cands.append(
                    SqrtNode(1.0 / du, -cu / du, 0.0, +1, 0.0, 0.0, 0.0, g)
                )
        for g in (fa, fb):
            for branch in (-1, +1):
                cands.append(circle_track(wvec, host.dir, e_x, g, branch))
        left, right = eta_at(j, mid)
        fns[j] = (_match_fn(cands, left, mid), _match_fn(cands, right, mid))

    crossings: List[Event] = []
    for ja, jb in zip(alive, alive[1:]):
        for f1 in fns[ja]:
            for f2 in fns[jb]:
                if _both_constant(f1, f2):
                    continue
                for r in root_between(f1, f2, search.interval(), search.subdivisions):
                    crossings.append(Event(r, "endpoint-crossing", prov + (ja, jb)))
    search.refine(crossings)

    mid = search.mid
    raw = []
    for j in alive:
        iv = eta_at(j, mid)
        if iv is None:
            raise ParametricFailure("eta vanished after refinement")
        raw.append((iv, fns[j]))
    raw.sort(key=lambda r: r[0][0])
    merged: SymSeg = []
    cur = None
    for (a, b), (fa, fb) in raw:
        if cur is None:
            cur = [a, b, fa, fb]
        elif a <= cur[1] + FUSE:
            if b > cur[1]:
                cur[1], cur[3] = b, fb
        else:
            merged.append((cur[2], cur[3]))
            cur = [a, b, fa, fb]
    if cur is not None:
        merged.append((cur[2], cur[3]))
    return merged


def _both_constant(f1: SqrtFunc, f2: SqrtFunc) -> bool:
    return (
        isinstance(f1, Linear)
        and f1.slope == 0.0
        and isinstance(f2, Linear)
        and f2.slope == 0.0
    )


def _symbolic_Z(
    search: _Search,
    vor: VoronoiOnSegment,
    host: ParamSegment,
    prov: Tuple[int, ...],
) -> Optional[SymSeg]:
    """Delta-neighborhood of a fixed component intersected with host."""
    events: List[Event] = []
    cell_bounds: List[float] = []
    for ci, (site, (a, b)) in enumerate(vor.cells):
        lo, hi = max(a, host.lo), min(b, host.hi)
        if lo > hi:
            continue
        cell = ParamSegment(host.anchor, host.dir, lo, hi)
        cell_bounds.extend((lo, hi))
        events.append(Event(cell.distance_to_point(site), "voronoi-cell-change", prov + (ci, 0)))
        events.append(Event(cell.point_at(lo).dist(site), "voronoi-cell-change", prov + (ci, 1)))
        events.append(Event(cell.point_at(hi).dist(site), "voronoi-cell-change", prov + (ci, 2)))
    search.refine(events)

    mid = search.mid
    z = intersect_union_disks_segment(vor, mid, host)
    if z.is_empty:
        return None
    cands: List[SqrtFunc] = [constant(v) for v in [host.lo, host.hi] + cell_bounds]
    zero = Linear(0.0, 0.0)
    for site, _ in vor.cells:
        q = host.anchor - site
        for branch in (-1, +1):
            cands.append(circle_track(q, host.dir, Point(1.0, 0.0), zero, branch))
    return [
        (_match_fn(cands, a, mid), _match_fn(cands, b, mid)) for a, b in z.intervals
    ]


def _symbolic_intersect(
    search: _Search, left: SymSeg, right: SymSeg, prov: Tuple[int, ...]
) -> Optional[SymSeg]:
    """Intersection of two symbolic segmentations on one host segment."""
    probe = search.hi
    try:
        rows_a = _eval_pairs(left, probe)
        rows_b = _eval_pairs(right, probe)
    except DomainError:
        probe = search.hi - (search.hi - search.lo) * 1e-9
        rows_a = _eval_pairs(left, probe)
        rows_b = _eval_pairs(right, probe)
    events: List[Event] = []
    for i, (a1, b1, fa1, fb1) in enumerate(rows_a):
        for j, (a2, b2, fa2, fb2) in enumerate(rows_b):
            if a2 > b1 or a1 > b2:
                continue
            for f1 in (fa1, fb1):
                for f2 in (fa2, fb2):
                    if _both_constant(f1, f2):
                        continue
                    for r in root_between(f1, f2, search.interval(), search.subdivisions):
                        events.append(Event(r, "merge-crossing", prov + (i, j)))
    search.refine(events)

    mid = search.mid
    rows_a = _eval_pairs(left, mid)
    rows_b = _eval_pairs(right, mid)
    out: SymSeg = []
    i = j = 0
    while i < len(rows_a) and j < len(rows_b):
        a1, b1, fa1, fb1 = rows_a[i]
        a2, b2, fa2, fb2 = rows_b[j]
        lo = max(a1, a2)
        hi = min(b1, b2)
        if lo <= hi:
            out.append((fa1 if a1 >= a2 else fa2, fb1 if b1 <= b2 else fb2))
        if b1 < b2:
            i += 1
        else:
            j += 1
    return out or None


def _realizable_at(tau, delta: float, prep: Preprocessing, family) -> bool:
    ctx = _TreeContext(prep, delta, family)
    for sub in decompose_significant(tau):
        if _subtree_feasible_sets(sub, tau, ctx) is None:
            return False
    return True


def _process_tree(
    search: _Search, tau, tree_id: int, prep: Preprocessing, family
) -> None:
    """Collect and refine on the events of one topology tree.

    Trees not realizable at hi are dead on the whole interval (monotone)
    and contribute nothing.  A tree whose root set stays non-empty on the
    refined open interval contradicts the interval invariant: that means
    a missed event, reported as ParametricFailure.
    """
    if not _realizable_at(tau, search.hi, prep, family):
        return
    instance = prep.instance
    for sub in decompose_significant(tau):
        children = sub.children_map()
        syms: Dict[int, SymSeg] = {}
        for s in sub.postorder_segments(tau.k):
            host = instance.segments[s - 1]
            parts: List[SymSeg] = []
            for c in children.get(s, ()):
                prov = (tree_id, s, c)
                if tau.is_segment(c):
                    part = _symbolic_Y(
                        search, instance.segments[c - 1], syms[c], host, prov
                    )
                else:
                    comp = family[c - tau.k - 1]
                    part = _symbolic_Z(
                        search, prep.voronoi(comp, s - 1), host, prov
                    )
                if part is None:
                    return
                parts.append(part)
            if not parts:
                syms[s] = [(constant(host.lo), constant(host.hi))]
                continue
            acc = parts[0]
            for extra in parts[1:]:
                acc = _symbolic_intersect(search, acc, extra, (tree_id, s))
                if acc is None:
                    return
            syms[s] = acc
        if not syms[sub.root]:
            return
    raise ParametricFailure("tree stayed realizable on the open interval")


def _parametric_core(
    prep: Preprocessing, instance: Instance, subdivisions: int
) -> Tuple[float, int]:
    decider = _cached_decider(prep, instance)
    hi = initial_upper_bound(instance)
    search = _Search(0.0, hi, decider, subdivisions)
    search.refine([Event(v, "mst-edge") for v in prep.top_edges])

    lengths = [e[2] for e in prep.mst.edges]
    fam_idx = sum(1 for length in lengths if length >= search.hi)
    k = instance.k
    if fam_idx + 1 > 4 * k + 1:
        # below hi the fixed points split into too many pieces
        return search.hi, len(search.events)
    family = prep.families[fam_idx]
    ell = fam_idx + 1
    for tree_id, tau in enumerate(enumerate_topology_trees(k, ell)):
        _process_tree(search, tau, tree_id, prep, family)
    return search.hi, len(search.events)


def solve_parametric(prep: Preprocessing, instance: Instance) -> SolveResult:
    if decide_zero(instance):
        return SolveResult(0.0, [instance.points[0]] * instance.k, "parametric")
    if instance.k == 0:
        return SolveResult(prep.mst.bottleneck, [], "parametric")
    decider = _cached_decider(prep, instance)

    def valid(v: float) -> bool:
        below = max(0.0, v - max(VALIDITY_TOL * v, VALIDITY_TOL))
        return decider(v) and not decider(below)

    subdivisions = 256
    while subdivisions <= 4096:
        try:
            value, n_events = _parametric_core(prep, instance, subdivisions)
        except ParametricFailure:
            break
        value = _snap(value, instance, decider)
        if valid(value):
            witness = decide_full(prep, instance, value, want_witness=True).placement
            return SolveResult(value, witness or [], "parametric", events_seen=n_events)
        subdivisions *= 2
    fb = solve_bisect(prep, instance, tol=1e-12)
    return SolveResult(fb.value, fb.witness, "parametric", fallback=True)
