"""Seeded instance generators. Output is a pure function of the arguments."""

from __future__ import annotations

import random
from fractions import Fraction

from .cnf import CnfFormula
from .core import Interval, ScInstance, UNIT, UncertainSegment
from .visibility import Point2, Scene, SceneError, UncertainObstacle, validate_scene


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_interval(rng: random.Random, grid: int, target: Interval = UNIT) -> Interval:
    a, b = sorted(rng.randint(0, grid) for _ in range(2))
    if rng.random() < 0.5:
        b = min(grid, a + rng.randint(grid // 4, grid // 2 + 1))
    scale = target.length / grid
    return Interval(target.lo + a * scale, target.lo + b * scale)


def random_sc(n: int, seed=0, grid: int = 12, target: Interval = UNIT) -> ScInstance:
    if n < 0:
        raise ValueError("segment count must be non-negative")
    rng = _rng(seed)
    segs = tuple(UncertainSegment(random_interval(rng, grid, target), random_interval(rng, grid, target), f"r{k}")
                 for k in range(n))
    return ScInstance(segs, target)


def random_3cnf(m: int, s: int, seed=0) -> CnfFormula:
    """s clauses over three distinct variables each, uniform signs."""
    if s < 0 or m < 0:
        raise ValueError("counts must be non-negative")
    if s and m < 3:
        raise ValueError("need at least 3 variables for 3-literal clauses")
    rng = _rng(seed)
    clauses = tuple(tuple(v if rng.random() < 0.5 else -v for v in rng.sample(range(1, m + 1), 3))
                    for _ in range(s))
    return CnfFormula(m, clauses)


def djpsy_3cnf(m: int, seed=0) -> CnfFormula:
    """m clauses, every variable three times: once with one sign, twice with the other."""
    if m < 3:
        raise ValueError("need at least 3 variables")
    rng = _rng(seed)
    for _ in range(200):
        occ = [v for v in range(1, m + 1) for _ in range(3)]
        rng.shuffle(occ)
        groups = [occ[3 * j:3 * j + 3] for j in range(m)]
        if all(len(set(g)) == 3 for g in groups):
            break
    else:
        order = rng.sample(range(1, m + 1), m)
        groups = [[order[j], order[(j + 1) % m], order[(j + 2) % m]] for j in range(m)]
    # For each variable: which occurrence gets the lone sign, and which sign that is.
    where = {v: [(j, k) for j, g in enumerate(groups) for k, x in enumerate(g) if x == v] for v in range(1, m + 1)}
    signs = {}
    for v, places in where.items():
        lone = rng.randrange(3)
        lone_sign = rng.choice((1, -1))
        for idx, place in enumerate(places):
            signs[place] = lone_sign if idx == lone else -lone_sign
    clauses = tuple(tuple(signs[(j, k)] * x for k, x in enumerate(g)) for j, g in enumerate(groups))
    return CnfFormula(m, clauses)


def random_allequal(n: int, seed=0, grid: int = 16, cells: int = 4, planted: bool | None = None) -> ScInstance:
    """n segments whose intervals all span ``cells`` grid steps; the target is
    the hull of the intervals. A planted instance hides a covering chain."""
    if n < 1:
        raise ValueError("need at least one segment")
    rng = _rng(seed)
    if planted is None:
        planted = rng.random() < 0.5
    starts = []
    if planted:
        pos = 0
        while len(starts) < n:
            starts.append(pos)
            pos += rng.randint(1, cells)
        span = starts[-1] + cells
    else:
        span = max(grid, cells)
    pairs = []
    for k in range(n):
        other = rng.randint(0, max(0, span - cells))
        first = starts[k] if planted else rng.randint(0, span - cells)
        pair = [first, other]
        rng.shuffle(pair)
        pairs.append(pair)
    lo = min(x for p in pairs for x in p)
    hi = max(x for p in pairs for x in p) + cells
    unit = Fraction(1, hi - lo)
    def iv(x):
        return Interval((x - lo) * unit, (x - lo + cells) * unit)
    segs = tuple(UncertainSegment(iv(a), iv(b), f"e{k}") for k, (a, b) in enumerate(pairs))
    return ScInstance(segs, Interval(0, 1))


def random_scene(k: int, seed=0, grid: int = 4) -> Scene:
    """Viewer above the x-axis looking at [0,1] x {0}. Most placements sit
    between the viewer and the viewed segment; about one in five is scattered
    freely so that clipped and empty shadows also occur. Candidates violating
    a precondition are redrawn."""
    rng = _rng(seed)
    g = grid
    q = Point2(Fraction(rng.randint(-g, 2 * g), 2 * g), Fraction(rng.randint(2 * g, 4 * g), g))
    viewed = (Point2(0, 0), Point2(1, 0))

    def candidate() -> tuple[Point2, Point2]:
        if rng.random() < 0.2:
            p1 = Point2(Fraction(rng.randint(-3 * g, 4 * g), g), Fraction(rng.randint(-g, 5 * g), g))
        else:
            y = Fraction(rng.randint(1, int(q.y * g) - 1), g)
            p1 = Point2(Fraction(rng.randint(-g, 2 * g), g), y)
        p2 = Point2(p1.x + Fraction(rng.randint(1, 2 * g), 2 * g) * rng.choice((1, -1)),
                    p1.y + Fraction(rng.randint(-g, g), 2 * g))
        return p1, p2

    obstacles = []
    while len(obstacles) < k:
        placements = []
        while len(placements) < 2:
            pl = candidate()
            try:
                validate_scene(q, viewed, [UncertainObstacle(pl, pl)])
            except SceneError:
                continue
            placements.append(pl)
        obstacles.append(UncertainObstacle(*placements))
    return Scene(q, viewed, tuple(obstacles))
