"""2D primitives: points, parametrized segments, segmentations and the
intersection operations the connectivity solver is built on.

All shapes live on directed lines given by an anchor point and a unit
direction vector, so a position on a line is a single real parameter t and
a subsegment is an interval [a, b].  Degenerate intervals (a == b) are
first-class values everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

# Tolerances (binary64 throughout).
EPS_PARALLEL = 1e-12      # cross-product threshold for parallel lines
EPS_DISC = 1e-12          # scaled discriminant threshold for tangency
EPS_COORD = 1e-9          # coordinate comparisons
EPS_FUSE = 1e-12          # intervals with a gap <= EPS_FUSE are fused


class GeometryError(ValueError):
    """Raised on invalid geometric input (caller bug)."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite point ({self.x}, {self.y})")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, c: float) -> "Point":
        return Point(c * self.x, c * self.y)

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def unit(v: Point) -> Point:
    """Normalize a direction vector; rejects the zero vector."""
    n = v.norm()
    if n == 0.0:
        raise GeometryError("zero direction vector")
    return Point(v.x / n, v.y / n)


@dataclass(frozen=True)
class ParamSegment:
    """Segment {anchor + t*dir : lo <= t <= hi} with a unit direction."""

    anchor: Point
    dir: Point
    lo: float
    hi: float

    def __post_init__(self) -> None:
        d = self.dir
        n = d.norm()
        if abs(n - 1.0) > 1e-12:
            object.__setattr__(self, "dir", Point(d.x / n, d.y / n))
        if self.lo > self.hi:
            raise GeometryError(f"segment with lo={self.lo} > hi={self.hi}")

    @staticmethod
    def from_endpoints(a: Point, b: Point) -> "ParamSegment":
        """Segment between two points; a == b gives a degenerate segment."""
        if a.dist(b) == 0.0:
            return ParamSegment(a, Point(1.0, 0.0), 0.0, 0.0)
        e = unit(b - a)
        return ParamSegment(a, e, 0.0, a.dist(b))

    def point_at(self, t: float) -> Point:
        return Point(self.anchor.x + t * self.dir.x, self.anchor.y + t * self.dir.y)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def endpoints(self) -> Tuple[Point, Point]:
        return self.point_at(self.lo), self.point_at(self.hi)

    def distance_to_point(self, q: Point) -> float:
        """Euclidean distance from q to the segment."""
        t = (q - self.anchor).dot(self.dir)
        t = min(max(t, self.lo), self.hi)
        return self.point_at(t).dist(q)


def _same_frame(a1: Point, e1: Point, a2: Point, e2: Point) -> bool:
    if abs(e1.cross(e2)) > EPS_COORD or e1.dot(e2) < 0.0:
        return False
    # anchors must lie on the same line (offsets along it are fine only if zero:
    # intervals are only comparable when the parametrizations coincide)
    w = a2 - a1
    return abs(e1.cross(w)) <= EPS_COORD and w.norm() <= EPS_COORD


@dataclass(frozen=True)
class Segmentation:
    """Ordered union of pairwise disjoint intervals on a directed line."""

    anchor: Point
    dir: Point
    intervals: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        d = self.dir
        n = d.norm()
        if abs(n - 1.0) > 1e-12:
            object.__setattr__(self, "dir", Point(d.x / n, d.y / n))
        merged = merge_intervals(self.intervals)
        object.__setattr__(self, "intervals", tuple(merged))

    @property
    def size(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, t: float, tol: float = 0.0) -> bool:
        return any(a - tol <= t <= b + tol for a, b in self.intervals)

    def point_at(self, t: float) -> Point:
        return Point(self.anchor.x + t * self.dir.x, self.anchor.y + t * self.dir.y)

    def leftmost(self) -> float:
        if self.is_empty:
            raise GeometryError("leftmost() of empty segmentation")
        return self.intervals[0][0]


def merge_intervals(
    intervals: Sequence[Tuple[float, float]], fuse: float = EPS_FUSE
) -> List[Tuple[float, float]]:
    """Sort intervals and fuse any pair with overlap or a gap <= fuse."""
    items = sorted((float(a), float(b)) for a, b in intervals)
    out: List[Tuple[float, float]] = []
    for a, b in items:
        if b < a:
            raise GeometryError(f"interval with a={a} > b={b}")
        if out and a - out[-1][1] <= fuse:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


class LineRelation(Enum):
    EMPTY = "empty"
    POINT = "point"
    COINCIDENT = "coincident"


@dataclass(frozen=True)
class LineIntersection:
    kind: LineRelation
    t1: float = math.nan
    t2: float = math.nan


def intersect_lines(p1: Point, e1: Point, p2: Point, e2: Point) -> LineIntersection:
    """Intersect lines p1 + t1*e1 and p2 + t2*e2 (unit directions)."""
    cr = e1.cross(e2)
    w = p2 - p1
    if abs(cr) <= EPS_PARALLEL:
        # parallel; coincident iff the anchor offset is along the direction
        if abs(e1.cross(w)) <= EPS_COORD:
            return LineIntersection(LineRelation.COINCIDENT)
        return LineIntersection(LineRelation.EMPTY)
    t1 = w.cross(e2) / cr
    t2 = w.cross(e1) / cr
    return LineIntersection(LineRelation.POINT, t1, t2)


def intersect_circle_line(
    center: Point, radius: float, p: Point, e: Point
) -> List[float]:
    """Parameters t with ||p + t*e - center|| == radius, sorted ascending.

    Returns zero, one (tangency) or two values.
    """
    if radius < 0.0:
        raise GeometryError("negative radius")
    w = p - center
    b = e.dot(w)                       # t^2 + 2 b t + c = 0
    c = w.dot(w) - radius * radius
    disc = b * b - c
    scale = max(1.0, radius * radius, w.dot(w))
    if disc < -EPS_DISC * scale:
        return []
    if disc <= EPS_DISC * scale:
        return [-b]
    r = math.sqrt(disc)
    return [-b - r, -b + r]


def intersect_disk_segment(
    center: Point, radius: float, seg: ParamSegment
) -> Optional[ParamSegment]:
    """Intersection of a closed disk with a segment, or None if empty.

    The result shares anchor and direction with seg; a tangency inside the
    segment is returned as a degenerate (lo == hi) segment.
    """
    ts = intersect_circle_line(center, radius, seg.anchor, seg.dir)
    if not ts:
        return None
    if len(ts) == 1:
        t0 = ts[0]
        if seg.lo <= t0 <= seg.hi:
            return ParamSegment(seg.anchor, seg.dir, t0, t0)
        return None
    a = max(ts[0], seg.lo)
    b = min(ts[1], seg.hi)
    if a > b:
        return None
    return ParamSegment(seg.anchor, seg.dir, a, b)


def intersect_segmentations(x1: Segmentation, x2: Segmentation) -> Segmentation:
    """Set intersection of two segmentations on the same parametrized line."""
    if not _same_frame(x1.anchor, x1.dir, x2.anchor, x2.dir):
        raise GeometryError("segmentations on different lines/parametrizations")
    out: List[Tuple[float, float]] = []
    i = j = 0
    iv1, iv2 = x1.intervals, x2.intervals
    while i < len(iv1) and j < len(iv2):
        a = max(iv1[i][0], iv2[j][0])
        b = min(iv1[i][1], iv2[j][1])
        if a <= b:
            out.append((a, b))
        if iv1[i][1] < iv2[j][1]:
            i += 1
        else:
            j += 1
    return Segmentation(x1.anchor, x1.dir, tuple(out))


@dataclass(frozen=True)
class VoronoiOnSegment:
    """Nearest-site decomposition of a host segment.

    cells are (site, (a, b)) pairs in parameter order; they tile the host
    segment and consecutive cells share exactly one boundary value.
    """

    host: ParamSegment
    cells: Tuple[Tuple[Point, Tuple[float, float]], ...]

    def site_at(self, t: float) -> Point:
        for site, (a, b) in self.cells:
            if a <= t <= b:
                return site
        raise GeometryError(f"parameter {t} outside the host segment")


def _bisector_split(
    host: ParamSegment, q1: Point, q2: Point, a: float, b: float
) -> List[Tuple[Point, Tuple[float, float]]]:
    """Assign [a, b] on the host line to the nearer of q1, q2.

    Returns one or two cells tiling [a, b].
    """
    w1 = host.anchor - q1
    w2 = host.anchor - q2
    # f(t) = d(P(t),q1)^2 - d(P(t),q2)^2 = |w1|^2 - |w2|^2 + 2 t e.(w1 - w2)
    c0 = w1.dot(w1) - w2.dot(w2)
    c1 = 2.0 * host.dir.dot(w1 - w2)
    if abs(c1) <= EPS_PARALLEL * max(1.0, abs(c0)):
        near = q1 if c0 <= 0.0 else q2
        return [(near, (a, b))]
    t_star = -c0 / c1
    left_near = q1 if c1 > 0.0 else q2
    right_near = q2 if c1 > 0.0 else q1
    if t_star <= a:
        return [(right_near, (a, b))]
    if t_star >= b:
        return [(left_near, (a, b))]
    return [(left_near, (a, t_star)), (right_near, (t_star, b))]


def _voronoi_merge(
    host: ParamSegment,
    cells1: List[Tuple[Point, Tuple[float, float]]],
    cells2: List[Tuple[Point, Tuple[float, float]]],
) -> List[Tuple[Point, Tuple[float, float]]]:
    out: List[Tuple[Point, Tuple[float, float]]] = []
    i = j = 0
    while i < len(cells1) and j < len(cells2):
        q1, (a1, b1) = cells1[i]
        q2, (a2, b2) = cells2[j]
        a = max(a1, a2)
        b = min(b1, b2)
        if a <= b:
            out.extend(_bisector_split(host, q1, q2, a, b))
        if b1 < b2:
            i += 1
        elif b2 < b1:
            j += 1
        else:
            i += 1
            j += 1
    # coalesce adjacent cells with the same site
    merged: List[Tuple[Point, Tuple[float, float]]] = []
    for site, (a, b) in out:
        if merged and merged[-1][0] == site:
            merged[-1] = (site, (merged[-1][1][0], b))
        else:
            merged.append((site, (a, b)))
    return merged


def voronoi_on_segment(sites: Sequence[Point], seg: ParamSegment) -> VoronoiOnSegment:
    """Voronoi diagram of sites restricted to seg, by divide and conquer."""
    uniq: List[Point] = []
    seen = set()
    for q in sites:
        key = (q.x, q.y)
        if key not in seen:
            seen.add(key)
            uniq.append(q)
    if not uniq:
        raise GeometryError("voronoi_on_segment with empty site set")

    def build(qs: Sequence[Point]) -> List[Tuple[Point, Tuple[float, float]]]:
        if len(qs) == 1:
            return [(qs[0], (seg.lo, seg.hi))]
        mid = len(qs) // 2
        return _voronoi_merge(seg, build(qs[:mid]), build(qs[mid:]))

    return VoronoiOnSegment(seg, tuple(build(uniq)))


def intersect_union_disks_segment(
    vor: VoronoiOnSegment, radius: float, seg: ParamSegment
) -> Segmentation:
    """(union of disks of the given radius around the sites) intersect seg.

    vor must be the Voronoi diagram of the disk centers on seg; each cell
    contributes the piece of its own disk only, and touching pieces fuse.
    """
    if radius < 0.0:
        raise GeometryError("negative radius")
    pieces: List[Tuple[float, float]] = []
    for site, (a, b) in vor.cells:
        lo = max(a, seg.lo)
        hi = min(b, seg.hi)
        if lo > hi:
            continue
        piece = intersect_disk_segment(site, radius, ParamSegment(seg.anchor, seg.dir, lo, hi))
        if piece is not None:
            pieces.append((piece.lo, piece.hi))
    return Segmentation(seg.anchor, seg.dir, tuple(pieces))


def stadium_segment_interval(
    p_x: Point, e_x: Point, a: float, b: float, delta: float, seg: ParamSegment
) -> Optional[Tuple[float, float]]:
    """Parameter interval of seg inside the delta-neighborhood of one
    subsegment (p_x, e_x, a, b).

    The neighborhood is a stadium (two half-disk caps plus an offset
    rectangle), convex, so the trace on seg is a single interval.
    """
    if delta < 0.0:
        raise GeometryError("negative delta")
    pieces: List[Tuple[float, float]] = []
    for cap_t in (a, b):
        center = Point(p_x.x + cap_t * e_x.x, p_x.y + cap_t * e_x.y)
        piece = intersect_disk_segment(center, delta, seg)
        if piece is not None:
            pieces.append((piece.lo, piece.hi))
        if a == b:
            break
    if a < b:
        # rectangle part: projection within [a, b], offset within [-delta, delta]
        w = seg.anchor - p_x
        cu, du = w.dot(e_x), seg.dir.dot(e_x)
        cv, dv = e_x.cross(w), e_x.cross(seg.dir)
        lo, hi = seg.lo, seg.hi
        for c, d, lo_val, hi_val in ((cu, du, a, b), (cv, dv, -delta, delta)):
            if abs(d) <= EPS_PARALLEL:
                if not (lo_val - EPS_COORD <= c <= hi_val + EPS_COORD):
                    lo, hi = 1.0, 0.0
                    break
            else:
                t0 = (lo_val - c) / d
                t1 = (hi_val - c) / d
                if t0 > t1:
                    t0, t1 = t1, t0
                lo = max(lo, t0)
                hi = min(hi, t1)
        if lo <= hi:
            pieces.append((lo, hi))
    if not pieces:
        return None
    return min(p[0] for p in pieces), max(p[1] for p in pieces)


def intersect_neighborhood_segmentation_segment(
    x: Segmentation, delta: float, seg: ParamSegment
) -> Segmentation:
    """(x + disk of radius delta) intersect seg, as a segmentation on seg."""
    pieces: List[Tuple[float, float]] = []
    for a, b in x.intervals:
        eta = stadium_segment_interval(x.anchor, x.dir, a, b, delta, seg)
        if eta is not None:
            pieces.append(eta)
    return Segmentation(seg.anchor, seg.dir, tuple(pieces))
