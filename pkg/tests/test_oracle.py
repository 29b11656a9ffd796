"""Brute-force oracle tests."""

import random

import pytest

from segconn import (
    Instance,
    ParamSegment,
    Point,
    compute_emst,
    mbst_bottleneck,
    oracle_delta_star,
    preprocess,
    split_components,
)
from segconn.solver import solve_bisect

from conftest import random_instance


class TestMbstBottleneck:
    def test_examples(self):
        assert mbst_bottleneck([Point(0, 0), Point(1, 0), Point(3, 0)]) == pytest.approx(2.0)
        assert mbst_bottleneck([Point(5, 5)]) == 0.0
        square = [Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)]
        assert mbst_bottleneck(square) == pytest.approx(1.0)

    def test_matches_emst(self):
        rng = random.Random(53)
        for _ in range(30):
            pts = [
                Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
                for _ in range(rng.randint(1, 40))
            ]
            assert mbst_bottleneck(pts) == pytest.approx(
                compute_emst(pts).bottleneck, rel=1e-12
            )

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mbst_bottleneck([])


class TestOracleDeltaStar:
    def test_instance_a_coarse_grid(self, instance_a):
        res = oracle_delta_star(instance_a, 2)
        assert res.value == pytest.approx(1.0)
        assert res.error_bound == pytest.approx(1.0)

    def test_k_zero(self, instance_collinear):
        res = oracle_delta_star(instance_collinear, 8)
        assert res.value == pytest.approx(2.0)
        assert res.error_bound == 0.0
        assert res.best_placement == ()

    def test_guard(self):
        segs = tuple(
            ParamSegment(Point(0, float(i)), Point(1, 0), 0.0, 1.0) for i in range(3)
        )
        inst = Instance(segments=segs, points=(Point(0, 0),))
        with pytest.raises(ValueError):
            oracle_delta_star(inst, 400)

    def test_doubling_never_increases(self):
        rng = random.Random(59)
        for _ in range(10):
            inst = random_instance(rng, max_points=10)
            v16 = oracle_delta_star(inst, 16).value
            v32 = oracle_delta_star(inst, 32).value
            assert v32 <= v16 + 1e-12

    def test_upper_bound_property(self):
        rng = random.Random(61)
        for _ in range(10):
            inst = random_instance(rng, max_points=10)
            prep = preprocess(inst)
            solved = solve_bisect(prep, inst, tol=1e-9)
            orc = oracle_delta_star(inst, 64)
            assert orc.value >= solved.value - 1e-8

    def test_ell_bound_at_oracle_value(self):
        rng = random.Random(67)
        for _ in range(10):
            inst = random_instance(rng, max_points=12)
            orc = oracle_delta_star(inst, 32)
            mst = compute_emst(inst.points)
            comps = split_components(mst, orc.value + orc.error_bound)
            assert comps.count <= 4 * inst.k + 1
