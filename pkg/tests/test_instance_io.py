"""Instance file parsing / serialization tests."""

import json

import pytest

from segconn.instance_io import (
    InstanceFormatError,
    generate_instance,
    parse_instance,
    serialize_instance,
)


class TestParse:
    def test_from_to_form(self):
        text = json.dumps(
            {
                "points": [[0, 0], [4, 0]],
                "segments": [{"from": [1, 1], "to": [3, 1]}],
            }
        )
        inst = parse_instance(text)
        assert inst.k == 1
        seg = inst.segments[0]
        assert (seg.point_at(seg.lo).x, seg.point_at(seg.lo).y) == (1.0, 1.0)
        assert (seg.point_at(seg.hi).x, seg.point_at(seg.hi).y) == (3.0, 1.0)

    def test_param_form(self):
        text = json.dumps(
            {
                "points": [[0, 0]],
                "segments": [{"p": [0, 0], "e": [0, 1], "a": -1.0, "b": 1.0}],
            }
        )
        inst = parse_instance(text)
        assert inst.segments[0].lo == -1.0 and inst.segments[0].hi == 1.0

    def test_malformed(self):
        with pytest.raises(InstanceFormatError):
            parse_instance("not json")
        with pytest.raises(InstanceFormatError):
            parse_instance('{"points": [[0]], "segments": []}')
        with pytest.raises(InstanceFormatError):
            parse_instance('{"points": [], "segments": [{"from": [0,0]}]}')
        with pytest.raises(InstanceFormatError):
            parse_instance('{"points": [], "segments": []}')  # no fixed point
        with pytest.raises(InstanceFormatError):
            parse_instance('[1, 2, 3]')


class TestRoundTrip:
    def test_serialize_parse_idempotent(self):
        inst = generate_instance(12, 2, seed=7, clusters=3, spread=1.5)
        text = serialize_instance(inst)
        again = serialize_instance(parse_instance(text))
        assert text == again

    def test_values_preserved(self):
        inst = generate_instance(9, 1, seed=3)
        back = parse_instance(serialize_instance(inst))
        assert back.points == inst.points
        for s1, s2 in zip(back.segments, inst.segments):
            assert (s1.anchor, s1.dir, s1.lo, s1.hi) == (
                s2.anchor,
                s2.dir,
                s2.lo,
                s2.hi,
            )


class TestGenerate:
    def test_deterministic(self):
        a = serialize_instance(generate_instance(20, 2, seed=42))
        b = serialize_instance(generate_instance(20, 2, seed=42))
        assert a == b

    def test_k_zero(self):
        inst = generate_instance(10, 0, seed=1)
        assert inst.k == 0 and len(inst.points) == 10

    def test_sizes(self):
        inst = generate_instance(15, 2, seed=5, clusters=4)
        assert inst.k == 2 and len(inst.points) == 13

    def test_invalid(self):
        with pytest.raises(ValueError):
            generate_instance(2, 2, seed=0)
        with pytest.raises(ValueError):
            generate_instance(5, 1, seed=0, clusters=0)
