"""Instance files: JSON documents with a "points" list and a "segments"
list, each segment given either by its endpoints ("from"/"to") or in
anchor / unit-direction / parameter-interval form ("p"/"e"/"a"/"b").

Serialization always emits the p/e/a/b form, so parse followed by
serialize is idempotent.
"""

from __future__ import annotations

import json
import math
import random
from typing import List

from .decision import Instance
from .geometry import ParamSegment, Point


class InstanceFormatError(ValueError):
    """Malformed instance document."""


def _point(obj) -> Point:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise InstanceFormatError(f"expected [x, y], got {obj!r}")
    try:
        return Point(float(obj[0]), float(obj[1]))
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(str(exc)) from exc


def _segment(obj) -> ParamSegment:
    if not isinstance(obj, dict):
        raise InstanceFormatError(f"segment entry must be an object, got {obj!r}")
    try:
        if "from" in obj or "to" in obj:
            return ParamSegment.from_endpoints(_point(obj["from"]), _point(obj["to"]))
        return ParamSegment(
            _point(obj["p"]), _point(obj["e"]), float(obj["a"]), float(obj["b"])
        )
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"bad segment {obj!r}: {exc}") from exc


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError("top-level document must be an object")
    points = tuple(_point(p) for p in doc.get("points", []))
    segments = tuple(_segment(s) for s in doc.get("segments", []))
    try:
        return Instance(segments=segments, points=points)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def serialize_instance(instance: Instance) -> str:
    doc = {
        "points": [[p.x, p.y] for p in instance.points],
        "segments": [
            {"p": [s.anchor.x, s.anchor.y], "e": [s.dir.x, s.dir.y], "a": s.lo, "b": s.hi}
            for s in instance.segments
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def generate_instance(
    n: int, k: int, seed: int, clusters: int = 2, spread: float = 1.0
) -> Instance:
    """Deterministic random instance: fixed points in Gaussian clusters,
    segments bridging the gaps between cluster pairs."""
    if not (n > k >= 0):
        raise ValueError("need n > k >= 0")
    if clusters < 1 or spread <= 0.0:
        raise ValueError("need clusters >= 1 and spread > 0")
    rng = random.Random(seed)
    span = 8.0 * spread
    centers = [
        Point(rng.uniform(-span, span), rng.uniform(-span, span))
        for _ in range(clusters)
    ]
    points: List[Point] = []
    for i in range(n - k):
        c = centers[i % clusters]
        points.append(Point(rng.gauss(c.x, spread), rng.gauss(c.y, spread)))
    segments: List[ParamSegment] = []
    for _ in range(k):
        ci = rng.randrange(clusters)
        cj = rng.randrange(clusters)
        if clusters > 1:
            while cj == ci:
                cj = rng.randrange(clusters)
        a, b = centers[ci], centers[cj]
        mid = Point(
            0.5 * (a.x + b.x) + rng.gauss(0.0, 0.3 * spread),
            0.5 * (a.y + b.y) + rng.gauss(0.0, 0.3 * spread),
        )
        angle = rng.uniform(0.0, 6.283185307179586)
        half = rng.uniform(0.4, 1.0) * spread
        e = Point(math.cos(angle), math.sin(angle))
        segments.append(
            ParamSegment.from_endpoints(
                Point(mid.x - half * e.x, mid.y - half * e.y),
                Point(mid.x + half * e.x, mid.y + half * e.y),
            )
        )
    return Instance(segments=tuple(segments), points=tuple(points))
