"""Nested square-root expressions of the threshold parameter, plus the
numeric root isolation and interval refinement used by parametric search.

A level-0 function is linear; a level-h function has the shape
    f(x) = a1*g(x) + a2 + a3*sqrt(sign*x^2 + a4*g(x)^2 + a5*g(x) + a6)
with g of level h-1.  These arise when tracing, as a function of the
radius x, an intersection of a moving circle with a fixed line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

RADICAND_TOL = 1e-12
IDENTICAL_TOL = 1e-12
ROOT_REL_TOL = 1e-13
DEFAULT_SUBDIVISIONS = 256


class DomainError(ValueError):
    """Evaluation outside the function's domain (radicand < -1e-12)."""


@dataclass(frozen=True)
class Linear:
    slope: float
    intercept: float

    @property
    def level(self) -> int:
        return 0

    def __call__(self, x: float) -> float:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class SqrtNode:
    a1: float
    a2: float
    a3: float
    sign: int            # +1 or -1 on the x^2 term inside the radical
    a4: float
    a5: float
    a6: float
    inner: "SqrtFunc"

    @property
    def level(self) -> int:
        return self.inner.level + 1

    def __call__(self, x: float) -> float:
        g = self.inner(x)
        rad = self.sign * x * x + self.a4 * g * g + self.a5 * g + self.a6
        if rad < -RADICAND_TOL * max(1.0, x * x, g * g):
            raise DomainError(f"radicand {rad} at x={x}")
        rad = max(rad, 0.0)
        return self.a1 * g + self.a2 + self.a3 * math.sqrt(rad)


SqrtFunc = Union[Linear, SqrtNode]


def eval_sqrt_func(f: SqrtFunc, x: float) -> float:
    return f(x)


def constant(value: float) -> Linear:
    return Linear(0.0, value)


def circle_track(q, e, f, g: SqrtFunc, branch: int) -> SqrtNode:
    """Solution t(x) of ||q + t(x)e - g(x)f|| = x for unit e, f.

    branch -1 picks the smaller root, +1 the larger.  The radicand is the
    quarter discriminant of the quadratic in t:
        x^2 + ((e.f)^2 - 1) g^2 + 2((q.f) - (q.e)(e.f)) g + (q.e)^2 - ||q||^2.
    """
    ef = e.dot(f)
    qe = q.dot(e)
    qf = q.dot(f)
    return SqrtNode(
        a1=ef,
        a2=-qe,
        a3=float(branch),
        sign=+1,
        a4=ef * ef - 1.0,
        a5=2.0 * (qf - qe * ef),
        a6=qe * qe - q.dot(q),
        inner=g,
    )


@dataclass(frozen=True)
class DeltaInterval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"empty delta interval ({self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Event:
    value: float
    kind: str            # neighborhood-emptiness | endpoint-crossing |
                         # voronoi-cell-change | merge-crossing
    provenance: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value) and self.value >= 0.0):
            raise ValueError(f"bad event value {self.value}")


def _bisect_root(
    d: Callable[[float], float], a: float, b: float, fa: float, fb: float
) -> float:
    """Sign-change bisection to relative tolerance ROOT_REL_TOL."""
    while b - a > ROOT_REL_TOL * max(1.0, abs(a), abs(b)):
        mid = 0.5 * (a + b)
        fm = d(mid)
        if fm == 0.0:
            return mid
        if (fa < 0.0) == (fm < 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return 0.5 * (a + b)


def root_between(
    f: SqrtFunc,
    g: SqrtFunc,
    interval: DeltaInterval,
    subdivisions: int = DEFAULT_SUBDIVISIONS,
) -> List[float]:
    """Sign-change roots of f - g inside the open interval.

    Uniform sampling followed by bisection; identical functions (equal to
    1e-12 at every sample) produce no roots.  Even-multiplicity touches
    between samples can be missed; callers re-verify the final answer.
    """
    lo, hi = interval.lo, interval.hi
    inset = (hi - lo) * 1e-9
    xs = [lo + inset + (hi - lo - 2 * inset) * i / subdivisions for i in range(subdivisions + 1)]
    vals: List[Optional[float]] = []
    for x in xs:
        try:
            vals.append(f(x) - g(x))
        except DomainError:
            vals.append(None)
    finite = [v for v in vals if v is not None]
    if finite and all(abs(v) <= IDENTICAL_TOL for v in finite):
        return []

    def diff(x: float) -> float:
        return f(x) - g(x)

    roots: List[float] = []
    for i in range(len(xs) - 1):
        va, vb = vals[i], vals[i + 1]
        if va is None or vb is None:
            continue
        if va == 0.0:
            roots.append(xs[i])
            continue
        if (va < 0.0) != (vb < 0.0):
            roots.append(_bisect_root(diff, xs[i], xs[i + 1], va, vb))
    if vals[-1] == 0.0:
        roots.append(xs[-1])
    return sorted(set(roots))


def refine_among(
    values: Sequence[float],
    interval: DeltaInterval,
    decider: Callable[[float], bool],
) -> DeltaInterval:
    """Shrink (lo, hi] around the step of a monotone decider.

    Contract: decider(lo) is False and decider(hi) is True.  Returns the
    consecutive pair among {lo} + inside-values + {hi} straddling the step,
    using O(log N) decider calls.
    """
    inside = sorted({v for v in values if interval.lo < v < interval.hi})
    if not inside:
        return interval
    candidates = [interval.lo] + inside + [interval.hi]
    lo_i, hi_i = 0, len(candidates) - 1
    # invariant: decider(candidates[lo_i]) False, decider(candidates[hi_i]) True
    while hi_i - lo_i > 1:
        mid = (lo_i + hi_i) // 2
        if decider(candidates[mid]):
            hi_i = mid
        else:
            lo_i = mid
    return DeltaInterval(candidates[lo_i], candidates[hi_i])
