"""Geometry kernel tests: fixed examples plus sampling membership oracles.

Every segmentation-valued operation is checked against its defining
predicate on uniformly sampled parameters, with a tolerance band around
boundary values.
"""

import math
import random

import pytest

from segconn.geometry import (
    GeometryError,
    LineRelation,
    ParamSegment,
    Point,
    Segmentation,
    intersect_circle_line,
    intersect_disk_segment,
    intersect_lines,
    intersect_neighborhood_segmentation_segment,
    intersect_segmentations,
    intersect_union_disks_segment,
    merge_intervals,
    stadium_segment_interval,
    unit,
    voronoi_on_segment,
)

BAND = 1e-7
N_SAMPLES = 1000
N_RANDOM = 100


def random_segment(rng, span=5.0, max_len=4.0):
    a = Point(rng.uniform(-span, span), rng.uniform(-span, span))
    ang = rng.uniform(0, 2 * math.pi)
    length = rng.uniform(0.0, max_len)
    return ParamSegment.from_endpoints(
        a, Point(a.x + length * math.cos(ang), a.y + length * math.sin(ang))
    )


def sample_params(rng, seg, n=N_SAMPLES):
    return [rng.uniform(seg.lo, seg.hi) for _ in range(n)]


class TestPoint:
    def test_arithmetic(self):
        p = Point(1.0, 2.0) + Point(3.0, -1.0)
        assert (p.x, p.y) == (4.0, 1.0)
        assert Point(3.0, 4.0).norm() == 5.0
        assert Point(1.0, 0.0).cross(Point(0.0, 1.0)) == 1.0

    def test_non_finite_rejected(self):
        with pytest.raises(GeometryError):
            Point(math.nan, 0.0)
        with pytest.raises(GeometryError):
            Point(0.0, math.inf)

    def test_unit_zero_rejected(self):
        with pytest.raises(GeometryError):
            unit(Point(0.0, 0.0))


class TestParamSegment:
    def test_direction_normalized(self):
        seg = ParamSegment(Point(0, 0), Point(3.0, 4.0), 0.0, 1.0)
        assert abs(seg.dir.norm() - 1.0) <= 1e-12

    def test_from_endpoints_degenerate(self):
        seg = ParamSegment.from_endpoints(Point(2.0, 3.0), Point(2.0, 3.0))
        assert seg.lo == seg.hi
        assert seg.point_at(seg.lo) == Point(2.0, 3.0)

    def test_bad_interval(self):
        with pytest.raises(GeometryError):
            ParamSegment(Point(0, 0), Point(1, 0), 1.0, 0.0)

    def test_distance_to_point(self):
        seg = ParamSegment(Point(0, 0), Point(1, 0), 0.0, 2.0)
        assert seg.distance_to_point(Point(1.0, 3.0)) == 3.0
        assert seg.distance_to_point(Point(4.0, 0.0)) == 2.0


class TestLines:
    def test_crossing(self):
        r = intersect_lines(Point(0, 0), Point(1, 0), Point(1, -1), Point(0, 1))
        assert r.kind is LineRelation.POINT
        assert abs(r.t1 - 1.0) <= 1e-12 and abs(r.t2 - 1.0) <= 1e-12

    def test_parallel_and_coincident(self):
        assert (
            intersect_lines(Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 0)).kind
            is LineRelation.EMPTY
        )
        assert (
            intersect_lines(Point(0, 0), Point(1, 0), Point(5, 0), Point(1, 0)).kind
            is LineRelation.COINCIDENT
        )

    def test_random_point_consistency(self):
        rng = random.Random(7)
        for _ in range(N_RANDOM):
            p1 = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
            p2 = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
            e1 = unit(Point(rng.gauss(0, 1), rng.gauss(0, 1)))
            e2 = unit(Point(rng.gauss(0, 1), rng.gauss(0, 1)))
            r = intersect_lines(p1, e1, p2, e2)
            if r.kind is LineRelation.POINT:
                q1 = p1 + e1.scale(r.t1)
                q2 = p2 + e2.scale(r.t2)
                assert q1.dist(q2) <= 1e-6


class TestCircleLine:
    def test_two_crossings(self):
        ts = intersect_circle_line(Point(0, 0), 1.0, Point(0, 0), Point(1, 0))
        assert ts == [-1.0, 1.0]

    def test_tangency(self):
        ts = intersect_circle_line(Point(0, 1), 1.0, Point(0, 0), Point(1, 0))
        assert len(ts) == 1 and abs(ts[0]) <= 1e-9

    def test_miss(self):
        assert intersect_circle_line(Point(0, 2), 1.0, Point(0, 0), Point(1, 0)) == []

    def test_random_residual(self):
        rng = random.Random(11)
        for _ in range(N_RANDOM):
            center = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
            radius = rng.uniform(0.0, 4.0)
            p = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
            e = unit(Point(rng.gauss(0, 1), rng.gauss(0, 1)))
            for t in intersect_circle_line(center, radius, p, e):
                assert abs((p + e.scale(t)).dist(center) - radius) <= 1e-9 * max(
                    1.0, radius
                )


class TestDiskSegment:
    def test_tangent_point(self):
        seg = ParamSegment(Point(0, 0), Point(1, 0), -2.0, 2.0)
        piece = intersect_disk_segment(Point(0, 1), 1.0, seg)
        assert piece is not None and piece.lo == piece.hi
        assert abs(piece.lo) <= 1e-9

    def test_membership_oracle(self):
        rng = random.Random(13)
        for _ in range(N_RANDOM):
            seg = random_segment(rng)
            center = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
            radius = rng.uniform(0.0, 4.0)
            piece = intersect_disk_segment(center, radius, seg)
            for t in sample_params(rng, seg, 50):
                d = seg.point_at(t).dist(center)
                if abs(d - radius) <= BAND:
                    continue
                inside = d < radius
                reported = piece is not None and piece.lo <= t <= piece.hi
                assert inside == reported


class TestSegmentations:
    def test_merge_intervals(self):
        assert merge_intervals([(1.0, 2.0), (0.0, 1.5)]) == [(0.0, 2.0)]
        assert merge_intervals([(0.0, 1.0), (1.0, 2.0)]) == [(0.0, 2.0)]
        with pytest.raises(GeometryError):
            merge_intervals([(2.0, 1.0)])

    def test_touching_intersection_degenerate(self):
        frame = dict(anchor=Point(0, 0), dir=Point(1, 0))
        x1 = Segmentation(intervals=((0.0, 1.0),), **frame)
        x2 = Segmentation(intervals=((1.0, 2.0),), **frame)
        out = intersect_segmentations(x1, x2)
        assert out.intervals == ((1.0, 1.0),)

    def test_frame_mismatch_rejected(self):
        x1 = Segmentation(Point(0, 0), Point(1, 0), ((0.0, 1.0),))
        x2 = Segmentation(Point(0, 1), Point(1, 0), ((0.0, 1.0),))
        with pytest.raises(GeometryError):
            intersect_segmentations(x1, x2)

    def test_membership_oracle(self):
        rng = random.Random(17)
        for _ in range(N_RANDOM):
            frame = dict(anchor=Point(0, 0), dir=Point(1, 0))

            def rand_segmentation():
                ivs = []
                for _ in range(rng.randint(0, 4)):
                    a = rng.uniform(-5, 5)
                    ivs.append((a, a + rng.uniform(0, 3)))
                return Segmentation(intervals=tuple(ivs), **frame)

            x1, x2 = rand_segmentation(), rand_segmentation()
            out = intersect_segmentations(x1, x2)
            for _ in range(50):
                t = rng.uniform(-6, 6)
                near_boundary = any(
                    abs(t - v) <= BAND
                    for x in (x1, x2)
                    for iv in x.intervals
                    for v in iv
                )
                if near_boundary:
                    continue
                assert out.contains(t) == (x1.contains(t) and x2.contains(t))


class TestVoronoiOnSegment:
    def test_two_sites(self):
        seg = ParamSegment(Point(0, 0), Point(1, 0), 0.0, 4.0)
        vor = voronoi_on_segment([Point(0, 1), Point(4, 1)], seg)
        assert len(vor.cells) == 2
        assert vor.cells[0][1][1] == pytest.approx(2.0)

    def test_nearest_site_oracle(self):
        rng = random.Random(19)
        for _ in range(N_RANDOM):
            seg = random_segment(rng)
            sites = [
                Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
                for _ in range(rng.randint(1, 8))
            ]
            vor = voronoi_on_segment(sites, seg)
            # cells tile the host segment
            assert vor.cells[0][1][0] == pytest.approx(seg.lo)
            assert vor.cells[-1][1][1] == pytest.approx(seg.hi)
            for (_, (_, b1)), (_, (a2, _)) in zip(vor.cells, vor.cells[1:]):
                assert b1 == pytest.approx(a2)
            for t in sample_params(rng, seg, 25):
                p = seg.point_at(t)
                best = min(p.dist(q) for q in sites)
                assert p.dist(vor.site_at(t)) <= best + 1e-9


class TestUnionDisks:
    def test_membership_oracle(self):
        rng = random.Random(23)
        for _ in range(N_RANDOM):
            seg = random_segment(rng)
            sites = [
                Point(rng.uniform(-4, 4), rng.uniform(-4, 4))
                for _ in range(rng.randint(1, 6))
            ]
            radius = rng.uniform(0.0, 4.0)
            vor = voronoi_on_segment(sites, seg)
            z = intersect_union_disks_segment(vor, radius, seg)
            for t in sample_params(rng, seg, 25):
                d = min(seg.point_at(t).dist(q) for q in sites)
                if abs(d - radius) <= BAND:
                    continue
                assert z.contains(t) == (d < radius)


class TestNeighborhood:
    def test_stadium_basic(self):
        # neighborhood of the x-axis piece [0, 2] traced on a parallel line
        seg = ParamSegment(Point(-5.0, 0.5), Point(1.0, 0.0), 0.0, 10.0)
        iv = stadium_segment_interval(Point(0, 0), Point(1, 0), 0.0, 2.0, 1.0, seg)
        lo, hi = iv
        # t=5 maps to x=0; reach extends sqrt(1 - 0.25) beyond both caps
        reach = math.sqrt(0.75)
        assert lo == pytest.approx(5.0 - reach, abs=1e-9)
        assert hi == pytest.approx(7.0 + reach, abs=1e-9)

    def test_membership_oracle(self):
        rng = random.Random(29)
        for _ in range(N_RANDOM):
            host = random_segment(rng)
            src = random_segment(rng)
            ivs = []
            for _ in range(rng.randint(0, 3)):
                a = rng.uniform(src.lo, src.hi)
                b = rng.uniform(a, src.hi)
                ivs.append((a, b))
            x = Segmentation(src.anchor, src.dir, tuple(ivs))
            delta = rng.uniform(0.0, 3.0)
            y = intersect_neighborhood_segmentation_segment(x, delta, host)
            for t in sample_params(rng, host, 25):
                p = host.point_at(t)
                d = min(
                    (
                        ParamSegment(src.anchor, src.dir, a, b).distance_to_point(p)
                        for a, b in x.intervals
                    ),
                    default=math.inf,
                )
                if abs(d - delta) <= BAND:
                    continue
                assert y.contains(t) == (d < delta)
