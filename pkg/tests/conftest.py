import math
import random

import pytest

from segconn import Instance, ParamSegment, Point


def random_instance(
    rng: random.Random,
    max_points: int = 23,
    max_k: int = 2,
    max_seg_len: float = 2.0,
    span: float = 5.0,
) -> Instance:
    """Random instance in the acceptance-suite regime: n <= 25, k <= 2,
    segment lengths <= max_seg_len."""
    k = rng.randint(0, max_k)
    n_pts = rng.randint(1, max_points)
    points = tuple(
        Point(rng.uniform(-span, span), rng.uniform(-span, span))
        for _ in range(n_pts)
    )
    segments = []
    for _ in range(k):
        a = Point(rng.uniform(-span, span), rng.uniform(-span, span))
        angle = rng.uniform(0.0, 2.0 * math.pi)
        length = rng.uniform(0.0, max_seg_len)
        b = Point(a.x + length * math.cos(angle), a.y + length * math.sin(angle))
        segments.append(ParamSegment.from_endpoints(a, b))
    return Instance(segments=tuple(segments), points=points)


@pytest.fixture
def instance_a() -> Instance:
    """Vertical segment x=0, y in [-1,1], points (-1,0) and (1,0); the
    optimum 1.0 is reached at the segment midpoint."""
    seg = ParamSegment(Point(0.0, -1.0), Point(0.0, 1.0), 0.0, 2.0)
    return Instance(segments=(seg,), points=(Point(-1.0, 0.0), Point(1.0, 0.0)))


@pytest.fixture
def instance_collinear() -> Instance:
    return Instance(
        segments=(), points=(Point(0.0, 0.0), Point(1.0, 0.0), Point(3.0, 0.0))
    )


@pytest.fixture
def instance_sqrt13() -> Instance:
    seg = ParamSegment(Point(2.0, 3.0), Point(1.0, 0.0), 0.0, 0.0)
    return Instance(segments=(seg,), points=(Point(0.0, 0.0), Point(4.0, 0.0)))
