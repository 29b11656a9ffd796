"""Decision procedure tests: analytic fixtures, monotonicity, witness
soundness, and agreement with the brute-force oracle."""

import random

import pytest

from segconn import (
    Instance,
    ParamSegment,
    Point,
    decide,
    decide_full,
    decide_zero,
    extract_witness,
    preprocess,
    threshold_graph_connected,
)
from segconn.oracle import oracle_delta_star
from segconn.solver import initial_upper_bound

from conftest import random_instance


class TestDecideZero:
    def test_coincident_on_segment(self):
        seg = ParamSegment(Point(0, 0), Point(1, 0), 0.0, 2.0)
        inst = Instance(segments=(seg,), points=(Point(1, 0), Point(1, 0)))
        assert decide_zero(inst)
        assert decide(preprocess(inst), inst, 0.0)

    def test_separated_points(self):
        inst = Instance(segments=(), points=(Point(0, 0), Point(1, 0)))
        assert not decide_zero(inst)

    def test_point_off_segment(self):
        seg = ParamSegment(Point(0, 1), Point(1, 0), 0.0, 2.0)
        inst = Instance(segments=(seg,), points=(Point(0, 0),))
        assert not decide_zero(inst)


class TestInstanceA:
    def test_step_at_one(self, instance_a):
        prep = preprocess(instance_a)
        assert not decide(prep, instance_a, 0.999)
        assert decide(prep, instance_a, 1.0)
        assert decide(prep, instance_a, 1.5)

    def test_witness_at_one(self, instance_a):
        prep = preprocess(instance_a)
        res = decide_full(prep, instance_a, 1.0, want_witness=True)
        assert res.connected
        (w,) = res.placement
        # only the segment midpoint (the origin) works at delta = 1; the
        # decision slack admits a sqrt(2e-12)-wide sliver around it
        assert abs(w.x) <= 1e-5 and abs(w.y) <= 1e-5


class TestKZero:
    def test_pure_points(self, instance_collinear):
        prep = preprocess(instance_collinear)
        assert not decide(prep, instance_collinear, 1.999)
        assert decide(prep, instance_collinear, 2.0)


class TestMonotonicity:
    def test_single_step_on_grids(self):
        rng = random.Random(41)
        for _ in range(20):
            inst = random_instance(rng)
            prep = preprocess(inst)
            top = initial_upper_bound(inst) * 1.1 + 0.1
            answers = [decide(prep, inst, top * i / 50) for i in range(1, 51)]
            # no true followed by false
            for a, b in zip(answers, answers[1:]):
                assert not (a and not b)
            assert answers[-1]


class TestWitness:
    def test_soundness_random(self):
        rng = random.Random(43)
        checked = 0
        while checked < 25:
            inst = random_instance(rng)
            if inst.k == 0:
                continue
            prep = preprocess(inst)
            delta = initial_upper_bound(inst) * rng.uniform(0.3, 1.0)
            res = decide_full(prep, inst, delta, want_witness=True)
            if not res.connected:
                continue
            pts = list(inst.points) + list(res.placement)
            assert threshold_graph_connected(pts, delta * (1 + 1e-9))
            checked += 1

    def test_extract_witness_matches(self, instance_a):
        prep = preprocess(instance_a)
        res = decide_full(prep, instance_a, 1.2)
        placement = extract_witness(res.tree, 1.2, prep)
        pts = list(instance_a.points) + placement
        assert threshold_graph_connected(pts, 1.2 * (1 + 1e-9))


class TestOracleAgreement:
    def test_threshold_agreement(self):
        # decide must match the grid oracle's verdict at deltas bounded
        # away from the oracle's own value by its error bound
        rng = random.Random(47)
        done = 0
        while done < 15:
            inst = random_instance(rng, max_points=18)
            if inst.k == 0:
                continue
            prep = preprocess(inst)
            orc = oracle_delta_star(inst, 64)
            margin = orc.error_bound + 1e-6
            above = orc.value + margin
            below = orc.value - margin
            assert decide(prep, inst, above)
            if below > 0:
                assert not decide(prep, inst, below)
            done += 1


class TestValidation:
    def test_negative_delta(self, instance_a):
        prep = preprocess(instance_a)
        with pytest.raises(ValueError):
            decide(prep, instance_a, -0.5)

    def test_needs_fixed_point(self):
        with pytest.raises(ValueError):
            Instance(segments=(), points=())
