"""3-SAT to SEGMENT COVER.

Clause j owns B_j = [(j-1)/s, j/s], cut into thirds B_j1, B_j2, B_j3. Two
clause segments {B_j1, B_j2} and {B_j2, B_j3} can cover any two thirds but
never all three. Slot k of clause j is the literal associated with B_jk.

Variable x_i gets the complete bipartite graph between its positive slots P_i
and negative slots N_i. Each slot interval is split into as many equal parts as
it has edges, and every edge becomes a segment {part at the positive end, part
at the negative end}. The whole third is covered by S-segments only if every
incident edge picks that end.

Segment order: T_1 .. T_s, then the edges of x_1 .. x_m sorted by
(positive slot, negative slot).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .cnf import CnfFormula, Decided, is_tautology, lit_value, occurrence_profile, preprocess_for_reduction, satisfies
from .core import Interval, Pick, ScInstance, UncertainSegment, is_cover, uncovered_gaps

Slot = tuple  # (clause j, position k), both 1-based


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ClauseGadget:
    j: int
    interval: Interval
    thirds: tuple[Interval, Interval, Interval]
    segments: tuple[int, int]  # instance indices of {third1, third2} and {third2, third3}


@dataclass(frozen=True)
class Edge:
    segment: int
    positive: Slot
    negative: Slot
    positive_part: Interval
    negative_part: Interval


@dataclass(frozen=True)
class VariableGadget:
    i: int
    positive: tuple[Slot, ...]
    negative: tuple[Slot, ...]
    edges: tuple[Edge, ...]

    def incident(self, slot: Slot) -> list[tuple[int, Pick]]:
        """(segment, pick) pairs of the edges at ``slot`` that choose ``slot``."""
        if slot in self.positive:
            return [(e.segment, Pick.FIRST) for e in self.edges if e.positive == slot]
        return [(e.segment, Pick.SECOND) for e in self.edges if e.negative == slot]


@dataclass(frozen=True)
class ReductionCertificate:
    formula: CnfFormula
    slots: dict[Slot, int]  # slot -> literal
    clause_gadgets: tuple[ClauseGadget, ...]
    variable_gadgets: tuple[VariableGadget, ...]
    provenance: tuple[tuple, ...]  # per segment: ("T", j, 1|2), ("S", i, pos slot, neg slot) or ("pad", cell)
    padding: tuple[int, ...] = field(default=())

    def gadget_of(self, v: int) -> VariableGadget:
        return self.variable_gadgets[v - 1]

    def to_json(self) -> dict[str, Any]:
        return {
            "num_vars": self.formula.num_vars,
            "clauses": [list(c) for c in self.formula.clauses],
            "slots": [[j, k, lit] for (j, k), lit in sorted(self.slots.items())],
            "clause_gadgets": [
                {"j": g.j, "interval": g.interval.to_json(), "thirds": [t.to_json() for t in g.thirds],
                 "segments": list(g.segments)} for g in self.clause_gadgets],
            "variable_gadgets": [
                {"i": g.i, "positive": [list(s) for s in g.positive], "negative": [list(s) for s in g.negative],
                 "edges": [{"segment": e.segment, "positive": list(e.positive), "negative": list(e.negative)}
                           for e in g.edges]} for g in self.variable_gadgets],
            "provenance": [list(p) for p in self.provenance],
            "padding": list(self.padding),
        }


def check_reducible(formula: CnfFormula) -> None:
    for j, clause in enumerate(formula.clauses, 1):
        if len(clause) != 3:
            raise PreconditionError(f"clause {j} has {len(clause)} literals, expected 3")
        if is_tautology(clause):
            raise PreconditionError(f"clause {j} is tautological")
    prof = occurrence_profile(formula)
    for v in range(1, formula.num_vars + 1):
        if (prof.p(v) == 0) != (prof.n(v) == 0):
            raise PreconditionError(f"variable {v} occurs with one polarity only; run preprocess_for_reduction")


def slot_map(formula: CnfFormula) -> dict[Slot, int]:
    return {(j, k): lit for j, clause in enumerate(formula.clauses, 1) for k, lit in enumerate(clause, 1)}


def variable_sides(formula: CnfFormula) -> list[tuple[list[Slot], list[Slot]]]:
    sides: list[tuple[list[Slot], list[Slot]]] = [([], []) for _ in range(formula.num_vars)]
    for (j, k), lit in sorted(slot_map(formula).items()):
        sides[abs(lit) - 1][0 if lit > 0 else 1].append((j, k))
    return sides


def clause_segments(thirds: Sequence[Interval], j: int) -> tuple[UncertainSegment, UncertainSegment]:
    return (UncertainSegment(thirds[0], thirds[1], f"T{j}a"),
            UncertainSegment(thirds[1], thirds[2], f"T{j}b"))


def reduce_3sat_to_sc(formula: CnfFormula) -> tuple[ScInstance, ReductionCertificate]:
    check_reducible(formula)
    s = len(formula.clauses)
    if s == 0:
        raise PreconditionError("empty formula; preprocessing decides it")
    slots = slot_map(formula)
    segments: list[UncertainSegment] = []
    provenance: list[tuple] = []
    third_of: dict[Slot, Interval] = {}
    gadgets = []
    for j in range(1, s + 1):
        b = Interval(Fraction(j - 1, s), Fraction(j, s))
        thirds = tuple(b.split(3))
        for k in (1, 2, 3):
            third_of[(j, k)] = thirds[k - 1]
        first = len(segments)
        segments.extend(clause_segments(thirds, j))
        provenance.extend([("T", j, 1), ("T", j, 2)])
        gadgets.append(ClauseGadget(j, b, thirds, (first, first + 1)))

    vgadgets = []
    for i, (pos, neg) in enumerate(variable_sides(formula), 1):
        # Edge (p, n) takes the n-th part of p (n counted among N_i) and the p-th part of n.
        pos_parts = {p: third_of[p].split(len(neg)) for p in pos} if neg else {}
        neg_parts = {n: third_of[n].split(len(pos)) for n in neg} if pos else {}
        edges = []
        for a, p in enumerate(pos):
            for b_, n in enumerate(neg):
                seg = UncertainSegment(pos_parts[p][b_], neg_parts[n][a], f"S{i}:{p[0]}.{p[1]}-{n[0]}.{n[1]}")
                edges.append(Edge(len(segments), p, n, seg.first, seg.second))
                segments.append(seg)
                provenance.append(("S", i, p, n))
        vgadgets.append(VariableGadget(i, tuple(pos), tuple(neg), tuple(edges)))

    cert = ReductionCertificate(formula, slots, tuple(gadgets), tuple(vgadgets), tuple(provenance))
    return ScInstance(tuple(segments)), cert


def expected_segment_count(formula: CnfFormula) -> int:
    return 2 * len(formula.clauses) + occurrence_profile(formula).edge_count()


# Picks of the (first, second) clause segment covering the two thirds other than `left_out`.
_T_PICKS = {
    1: (Pick.SECOND, Pick.SECOND),  # third2, third3
    2: (Pick.FIRST, Pick.SECOND),   # third1, third3
    3: (Pick.FIRST, Pick.FIRST),    # third1, third2
}


def t_picks_leaving_out(k: int) -> tuple[Pick, Pick]:
    return _T_PICKS[k]


def clause_gadget_cover_count(picks: Sequence[Pick]) -> int:
    """How many of the three thirds the two clause segments cover fully."""
    a, b = picks
    covered = {1 if a == Pick.FIRST else 2, 2 if b == Pick.FIRST else 3}
    return len(covered)


def assignment_to_choice(cert: ReductionCertificate, assignment: Sequence[bool]) -> tuple[Pick, ...]:
    formula = cert.formula
    if not satisfies(formula, assignment):
        bad = [j for j, c in enumerate(formula.clauses, 1) if not any(lit_value(l, assignment) for l in c)]
        raise ValueError(f"assignment leaves clauses {bad} unsatisfied")
    picks = [Pick.FIRST] * len(cert.provenance)
    for g in cert.variable_gadgets:
        side = Pick.FIRST if assignment[g.i - 1] else Pick.SECOND
        for e in g.edges:
            picks[e.segment] = side
    for g in cert.clause_gadgets:
        k = next(k for k in (1, 2, 3) if lit_value(cert.slots[(g.j, k)], assignment))
        picks[g.segments[0]], picks[g.segments[1]] = t_picks_leaving_out(k)
    return tuple(picks)


def fully_chosen(cert: ReductionCertificate, slot: Slot, choice: Sequence[Pick]) -> bool:
    g = cert.gadget_of(abs(cert.slots[slot]))
    incident = g.incident(slot)
    return bool(incident) and all(choice[seg] == pick for seg, pick in incident)


def choice_to_assignment(cert: ReductionCertificate, inst: ScInstance,
                         choice: Sequence[Pick]) -> tuple[bool, ...]:
    """Read an assignment off a cover: per clause, the lowest slot whose every
    incident edge chose it decides that slot's variable."""
    if not is_cover(inst, choice):
        raise ValueError(f"choice is not a cover; gaps {[str(g) for g in uncovered_gaps(inst, choice)]}")
    values: dict[int, bool] = {}
    for g in cert.clause_gadgets:
        k = next((k for k in (1, 2, 3) if fully_chosen(cert, (g.j, k), choice)), None)
        if k is None:
            raise AssertionError(f"clause {g.j}: no fully chosen literal in a cover")
        lit = cert.slots[(g.j, k)]
        if values.setdefault(abs(lit), lit > 0) != (lit > 0):
            raise AssertionError(f"variable {abs(lit)} driven to both values")
    return tuple(values.get(v, True) for v in range(1, cert.formula.num_vars + 1))


def reduce_any_3cnf(formula: CnfFormula):
    """Preprocess then reduce; returns the Decided verdict when no instance is needed."""
    pre = preprocess_for_reduction(formula)
    if isinstance(pre, Decided):
        return pre
    inst, cert = reduce_3sat_to_sc(pre.formula)
    return pre, inst, cert
