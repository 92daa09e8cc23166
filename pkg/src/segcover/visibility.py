"""Central projection of uncertain obstacle segments onto a viewed segment.

Each obstacle has two possible placements. Seen from the viewpoint q, a
placement hides a sub-interval of the viewed segment a-b, parameterized so
that a is 0 and b is 1. Projecting both placements of every obstacle gives a
SEGMENT COVER instance over [0, 1]: a covering choice is a realization in
which no point of a-b is visible from q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .core import Interval, ScInstance, UncertainSegment, as_rational
from .solver import SolveResult, solve_dpll


class SceneError(ValueError):
    pass


@dataclass(frozen=True)
class Point2:
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def scaled(self, f: Fraction) -> "Point2":
        return Point2(self.x * f, self.y * f)

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y)]

    @classmethod
    def from_json(cls, data: Sequence[Any]) -> "Point2":
        return cls(as_rational(data[0]), as_rational(data[1]))


Segment2 = tuple  # (Point2, Point2)


def cross(u: Point2, v: Point2) -> Fraction:
    return u.x * v.y - u.y * v.x


def dot(u: Point2, v: Point2) -> Fraction:
    return u.x * v.x + u.y * v.y


def orient(a: Point2, b: Point2, c: Point2) -> int:
    d = cross(b - a, c - a)
    return (d > 0) - (d < 0)


def on_segment(p: Point2, seg: Segment2) -> bool:
    a, b = seg
    return (orient(a, b, p) == 0 and min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def segments_intersect(s1: Segment2, s2: Segment2) -> bool:
    """Closed segment intersection by orientation tests."""
    p1, p2 = s1
    p3, p4 = s2
    d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
    d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (on_segment(p1, s2) or on_segment(p2, s2) or on_segment(p3, s1) or on_segment(p4, s1))


@dataclass(frozen=True)
class UncertainObstacle:
    first: Segment2
    second: Segment2

    def placements(self) -> tuple[Segment2, Segment2]:
        return self.first, self.second


@dataclass(frozen=True)
class Scene:
    viewpoint: Point2
    viewed: Segment2
    obstacles: tuple[UncertainObstacle, ...]

    def to_json(self) -> dict[str, Any]:
        seg = lambda s: [s[0].to_json(), s[1].to_json()]
        return {"viewpoint": self.viewpoint.to_json(), "viewed": seg(self.viewed),
                "obstacles": [[seg(o.first), seg(o.second)] for o in self.obstacles]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Scene":
        seg = lambda s: (Point2.from_json(s[0]), Point2.from_json(s[1]))
        return cls(Point2.from_json(data["viewpoint"]), seg(data["viewed"]),
                   tuple(UncertainObstacle(seg(a), seg(b)) for a, b in data["obstacles"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def validate_scene(q: Point2, viewed: Segment2, obstacles: Sequence[UncertainObstacle]) -> None:
    a, b = viewed
    if a == b:
        raise SceneError("viewed segment is a single point")
    if orient(a, b, q) == 0:
        raise SceneError("viewpoint lies on the line through the viewed segment")
    for i, ob in enumerate(obstacles):
        for which, pl in zip(("first", "second"), ob.placements()):
            if on_segment(q, pl):
                raise SceneError(f"obstacle {i} {which} placement contains the viewpoint")
            if segments_intersect(pl, viewed):
                raise SceneError(f"obstacle {i} {which} placement meets the viewed segment")


def _lerp(p: Point2, r: Point2, f: Fraction) -> Point2:
    return p + (r - p).scaled(f)


def shadow(q: Point2, viewed: Segment2, placement: Segment2) -> Interval:
    """Parameter interval of a-b hidden by one placement; [0, 0] when none."""
    a, b = viewed
    d = b - a
    sign = 1 if cross(d, q - a) > 0 else -1
    height = lambda p: sign * cross(d, p - a)
    hq = height(q)
    p1, p2 = placement
    h1, h2 = height(p1), height(p2)
    none = Interval(Fraction(0), Fraction(0))

    # Keep the part on the viewer's side of the line.
    if h1 < 0 and h2 < 0:
        return none
    if h1 < 0:
        p1, h1 = _lerp(p1, p2, h1 / (h1 - h2)), Fraction(0)
    elif h2 < 0:
        p2, h2 = _lerp(p2, p1, h2 / (h2 - h1)), Fraction(0)
    if h1 >= hq and h2 >= hq:
        return none

    def param(p: Point2) -> Fraction:
        lam = hq / (hq - height(p))
        x = q + (p - q).scaled(lam)
        return dot(x - a, d) / dot(d, d)

    if h1 < hq and h2 < hq:
        lo, hi = sorted([param(p1), param(p2)])
    else:
        # One end reaches the viewer's level: its rays run off to infinity along a-b.
        inside, hin, outside, hout = (p1, h1, p2, h2) if h1 < hq else (p2, h2, p1, h1)
        level = _lerp(inside, outside, (hq - hin) / (hout - hin))
        t = param(inside)
        lo, hi = (t, None) if dot(level - q, d) > 0 else (None, t)
    lo = Fraction(0) if lo is None else max(Fraction(0), lo)
    hi = Fraction(1) if hi is None else min(Fraction(1), hi)
    if lo > hi:
        return none
    return Interval(lo, hi)


def project_scene(q: Point2, viewed: Segment2, obstacles: Sequence[UncertainObstacle]) -> ScInstance:
    validate_scene(q, viewed, obstacles)
    segs = [UncertainSegment(shadow(q, viewed, ob.first), shadow(q, viewed, ob.second), f"o{i}")
            for i, ob in enumerate(obstacles)]
    return ScInstance(tuple(segs))


def project(scene: Scene) -> ScInstance:
    return project_scene(scene.viewpoint, scene.viewed, scene.obstacles)


def fully_blockable(scene: Scene) -> SolveResult:
    """COVERABLE iff some realization hides every point of the viewed segment."""
    return solve_dpll(project(scene))
