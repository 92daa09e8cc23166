"""ALL-EQUAL SEGMENT COVER and the one-dimensional BCU problem.

Layout for s clauses, with common length L = 1/(6s + 1): clause j owns six
consecutive cells B_{j,0..5}, followed after the last clause by one terminal
cell. Cells B_{j,1}, B_{j,3}, B_{j,5} stand for the three literal slots; the
even cells and the terminal cell are pinned by padding segments whose two
alternatives coincide. Clause segments are {B_{j,1}, B_{j,3}} and
{B_{j,3}, B_{j,5}}.

A literal cell with two incident edges is covered by two copies shifted by
-delta and +delta (delta = L/10); only both together cover it. A cell with a
single edge gets one unshifted copy.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from .cnf import CnfFormula, Reducible, preprocess_for_reduction, validate_djpsy_form
from .core import Interval, ScInstance, UncertainSegment, as_rational
from .solver import DEFAULT_LIMIT, LimitExceededError
from .reduce3sat import ClauseGadget, Edge, ReductionCertificate, VariableGadget, clause_segments, slot_map, variable_sides


class AllEqualError(ValueError):
    pass


@dataclass(frozen=True)
class AllEqualLayout:
    s: int
    length: Fraction
    delta: Fraction

    def cell(self, j: int, c: int) -> Interval:
        """B_{j,c}; (s + 1, 0) is the terminal cell."""
        start = (6 * (j - 1) + c) * self.length
        return Interval(start, start + self.length)

    def literal_cell(self, j: int, k: int) -> Interval:
        return self.cell(j, 2 * k - 1)

    @property
    def target(self) -> Interval:
        return Interval(Fraction(0), (6 * self.s + 1) * self.length)


def layout_for(s: int) -> AllEqualLayout:
    length = Fraction(1, 6 * s + 1)
    return AllEqualLayout(s, length, length / 10)


def reduce_djpsy_to_allequal(formula: CnfFormula) -> tuple[ScInstance, ReductionCertificate]:
    report = validate_djpsy_form(formula)
    if not report.ok:
        raise AllEqualError(f"not in bounded-occurrence form: variables {list(report.bad_variables)}, "
                            f"clauses {list(report.bad_clauses)}")
    pre = preprocess_for_reduction(formula)
    if not isinstance(pre, Reducible) or pre.formula != formula:
        raise AllEqualError("formula has tautological clauses or pure literals")
    s = len(formula.clauses)
    lay = layout_for(s)
    segments: list[UncertainSegment] = []
    provenance: list[tuple] = []

    gadgets = []
    for j in range(1, s + 1):
        thirds = tuple(lay.literal_cell(j, k) for k in (1, 2, 3))
        first = len(segments)
        segments.extend(clause_segments(thirds, j))
        provenance.extend([("T", j, 1), ("T", j, 2)])
        gadgets.append(ClauseGadget(j, Interval(lay.cell(j, 0).lo, lay.cell(j, 5).hi), thirds, (first, first + 1)))

    def copies(slot, degree):
        base = lay.literal_cell(*slot)
        if degree == 1:
            return [base]
        return [base.shifted(-lay.delta), base.shifted(lay.delta)]

    vgadgets = []
    for i, (pos, neg) in enumerate(variable_sides(formula), 1):
        pos_parts = {p: copies(p, len(neg)) for p in pos}
        neg_parts = {n: copies(n, len(pos)) for n in neg}
        edges = []
        for a, p in enumerate(pos):
            for b, n in enumerate(neg):
                seg = UncertainSegment(pos_parts[p][b], neg_parts[n][a], f"S{i}:{p[0]}.{p[1]}-{n[0]}.{n[1]}")
                edges.append(Edge(len(segments), p, n, seg.first, seg.second))
                segments.append(seg)
                provenance.append(("S", i, p, n))
        vgadgets.append(VariableGadget(i, tuple(pos), tuple(neg), tuple(edges)))

    padding = []
    pinned = [(j, c) for j in range(1, s + 1) for c in (0, 2, 4)] + [(s + 1, 0)]
    for j, c in pinned:
        cell = lay.cell(j, c)
        padding.append(len(segments))
        segments.append(UncertainSegment(cell, cell, f"pad{j}.{c}"))
        provenance.append(("pad", j, c))

    cert = ReductionCertificate(formula, slot_map(formula), tuple(gadgets), tuple(vgadgets),
                                tuple(provenance), tuple(padding))
    return ScInstance(tuple(segments), lay.target), cert


def assert_all_equal(inst: ScInstance) -> Fraction:
    if not inst.segments:
        raise AllEqualError("no segments, so no common length")
    length = inst.segments[0].first.length
    deviant = [k for k, seg in enumerate(inst.segments)
               if seg.first.length != length or seg.second.length != length]
    if deviant:
        raise AllEqualError(f"segments {deviant} differ from length {length}")
    return length


@dataclass(frozen=True)
class BcuInstance:
    regions: tuple[tuple[Fraction, Fraction], ...]
    r: Fraction

    def to_json(self) -> dict[str, Any]:
        return {"r": str(self.r), "regions": [[str(a), str(b)] for a, b in self.regions]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "BcuInstance":
        regions = tuple((as_rational(a), as_rational(b)) for a, b in data["regions"])
        return cls(regions, as_rational(data["r"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def bcu_from_allequal(inst: ScInstance) -> BcuInstance:
    """Regions of interval midpoints plus the two sentinel regions.

    The radius equals r exactly when the source is coverable, provided the
    target is the hull of the segment intervals (as in every reduction output).
    """
    r = assert_all_equal(inst) / 2
    mids = [(s.first.midpoint, s.second.midpoint) for s in inst.segments]
    xl = min(x for pair in mids for x in pair)
    xr = max(x for pair in mids for x in pair)
    return BcuInstance(((xl - 2 * r, xl - 3 * r), *mids, (xr + 2 * r, xr + 3 * r)), r)


def bcu_radius_for_selection(points: Sequence[Fraction]) -> Fraction:
    if not points:
        raise ValueError("need at least one point")
    pts = sorted(points)
    return max((b - a for a, b in zip(pts, pts[1:])), default=Fraction(0)) / 2


_INT64_SAFE = 2 ** 62
_CHUNK = 2 ** 15


def bcu_solve(bcu: BcuInstance, limit: Optional[int] = DEFAULT_LIMIT) -> tuple[Fraction, tuple[int, ...]]:
    """Exact optimum over every selection (0 or 1 per region); ties go to the
    lexicographically smallest selection."""
    n = len(bcu.regions)
    if limit is not None and n > limit:
        raise LimitExceededError(f"{n} regions exceed the limit of {limit}")
    if n == 0:
        return Fraction(0), ()
    scale = math.lcm(*(x.denominator for pair in bcu.regions for x in pair))
    ints = [[int(x * scale) for x in pair] for pair in bcu.regions]
    lo = min(min(p) for p in ints)
    span = max(max(p) for p in ints) - lo
    if span < _INT64_SAFE:
        table = np.array([[x - lo for x in pair] for pair in ints], dtype=np.int64)
        shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
        best_gap, best_idx = None, 0
        for start in range(0, 2 ** n, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, 2 ** n), dtype=np.int64)
            sel = (idx[:, None] >> shifts) & 1
            pts = np.sort(table[np.arange(n), sel], axis=1)
            gaps = np.diff(pts, axis=1).max(axis=1) if n > 1 else np.zeros(len(idx), dtype=np.int64)
            k = int(np.argmin(gaps))
            if best_gap is None or gaps[k] < best_gap:
                best_gap, best_idx = int(gaps[k]), start + k
        best_sel = tuple((best_idx >> (n - 1 - b)) & 1 for b in range(n))
        return Fraction(best_gap, 2 * scale), best_sel
    best_r, best_sel = None, ()
    for sel_ in itertools.product((0, 1), repeat=n):
        r = bcu_radius_for_selection([pair[b] for pair, b in zip(bcu.regions, sel_)])
        if best_r is None or r < best_r:
            best_r, best_sel = r, sel_
    return best_r, best_sel
