"""Exact interval arithmetic and the SEGMENT COVER instance model.

Every coordinate is a :class:`fractions.Fraction`. Intervals are closed, so two
intervals that only touch at an endpoint still cover that point.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

Rational = Fraction


def as_rational(value: Any) -> Fraction:
    """Convert ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: they would silently carry binary rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coordinate {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


class Pick(enum.IntEnum):
    FIRST = 0
    SECOND = 1

    def flipped(self) -> "Pick":
        return Pick(1 - self)


Choice = tuple  # tuple[Pick, ...], one entry per segment


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise ValueError(f"interval with lo > hi: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def contains_point(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def shifted(self, delta: Fraction) -> "Interval":
        return Interval(self.lo + delta, self.hi + delta)

    def split(self, parts: int) -> list["Interval"]:
        """Equal partition into ``parts`` pieces sharing only endpoints."""
        if parts < 1:
            raise ValueError("parts must be positive")
        step = self.length / parts
        return [Interval(self.lo + i * step, self.lo + (i + 1) * step) for i in range(parts)]

    def to_json(self) -> list[str]:
        return [str(self.lo), str(self.hi)]

    @classmethod
    def from_json(cls, data: Sequence[Any]) -> "Interval":
        if len(data) != 2:
            raise ValueError(f"interval needs two endpoints, got {data!r}")
        return cls(as_rational(data[0]), as_rational(data[1]))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


UNIT = Interval(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class UncertainSegment:
    first: Interval
    second: Interval
    label: str = ""

    def pick(self, which: Pick) -> Interval:
        return self.first if which == Pick.FIRST else self.second

    def to_json(self) -> dict[str, Any]:
        return {"first": self.first.to_json(), "second": self.second.to_json(), "label": self.label}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "UncertainSegment":
        return cls(Interval.from_json(data["first"]), Interval.from_json(data["second"]),
                   str(data.get("label", "")))


@dataclass(frozen=True)
class ScInstance:
    segments: tuple[UncertainSegment, ...] = ()
    target: Interval = UNIT

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        for k, seg in enumerate(self.segments):
            for iv in (seg.first, seg.second):
                if not self.target.contains(iv):
                    raise ValueError(f"segment {k} interval {iv} leaves target {self.target}")

    def __len__(self) -> int:
        return len(self.segments)

    def chosen(self, choice: Sequence[Pick]) -> list[Interval]:
        check_choice(self, choice)
        return [seg.pick(p) for seg, p in zip(self.segments, choice)]

    def intervals(self) -> list[Interval]:
        return [iv for seg in self.segments for iv in (seg.first, seg.second)]

    def to_json(self) -> dict[str, Any]:
        return {"target": self.target.to_json(), "segments": [s.to_json() for s in self.segments]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "ScInstance":
        target = Interval.from_json(data.get("target", ["0", "1"]))
        return cls(tuple(UncertainSegment.from_json(s) for s in data.get("segments", [])), target)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ScInstance":
        return cls.from_json(json.loads(text))


def check_choice(inst: ScInstance, choice: Sequence[Pick]) -> None:
    if len(choice) != len(inst.segments):
        raise ValueError(f"choice has {len(choice)} picks for {len(inst.segments)} segments")


def merge(intervals: Iterable[Interval]) -> list[Interval]:
    """Merge overlapping or touching positive-length intervals, left to right."""
    out: list[Interval] = []
    for iv in sorted(iv for iv in intervals if not iv.degenerate):
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return out


def union_length(intervals: Iterable[Interval]) -> Fraction:
    return sum((iv.length for iv in merge(intervals)), Fraction(0))


def uncovered_gaps(inst: ScInstance, choice: Sequence[Pick]) -> list[Interval]:
    """Closures of the positive-length parts of the target left uncovered."""
    gaps = []
    cursor = inst.target.lo
    for iv in merge(inst.chosen(choice)):
        if iv.lo > cursor:
            gaps.append(Interval(cursor, iv.lo))
        cursor = max(cursor, iv.hi)
    if cursor < inst.target.hi:
        gaps.append(Interval(cursor, inst.target.hi))
    return gaps


def is_cover(inst: ScInstance, choice: Sequence[Pick]) -> bool:
    # A degenerate target has nothing of positive length to cover.
    return not uncovered_gaps(inst, choice)


@dataclass(frozen=True)
class CellDecomposition:
    cells: tuple[Interval, ...]
    coverers: tuple[frozenset, ...] = field(default=())  # frozenset[(segment index, Pick)]

    def positive(self) -> list[tuple[Interval, frozenset]]:
        """Cells of positive length with their coverers (the clause units)."""
        return [(c, cov) for c, cov in zip(self.cells, self.coverers) if not c.degenerate]


def decompose_cells(inst: ScInstance) -> CellDecomposition:
    t = inst.target
    coords = sorted({t.lo, t.hi} | {x for iv in inst.intervals() for x in (iv.lo, iv.hi)})
    if t.degenerate:
        cells = [t]
    else:
        cells = [Interval(a, b) for a, b in zip(coords, coords[1:])]
    coverers = []
    for cell in cells:
        cov = set()
        for k, seg in enumerate(inst.segments):
            for p in Pick:
                iv = seg.pick(p)
                if iv.contains(cell):
                    cov.add((k, p))
        coverers.append(frozenset(cov))
    return CellDecomposition(tuple(cells), tuple(coverers))


def all_choices(n: int):
    """Every pick vector of length ``n`` in lexicographic order, FIRST before SECOND."""
    return itertools.product((Pick.FIRST, Pick.SECOND), repeat=n)
