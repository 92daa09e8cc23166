"""MAX-SC objectives, the weighted MAX-SAT route, the gap construction with its
repair procedure, and the concatenation amplifier for CONTIGUOUS MAX-SC.

The gap instance places clause j on [3(j-1), 3j] with unit thirds and appends
a short interval J' = [3s, 3s + eps] shared by all dummy vertices. Every
variable graph is padded with dummy vertices until both sides have equal size
m_i, so each real vertex has degree m_i and parts of length 1/m_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cnf import CnfFormula, lit_value
from .core import Interval, Pick, ScInstance, UncertainSegment, is_cover, merge, union_length
from .equivalence import assignment_to_choice, clause_cells
from .reduce3sat import clause_segments, slot_map, t_picks_leaving_out

# Inapproximability constants: MAX-E3SAT threshold and the MAX-SC ratio it implies.
E3SAT_RATIO = Fraction(7, 8)
MAXSC_RATIO = (E3SAT_RATIO + 2) / 3  # 23/24
DEFAULT_EPSILON = Fraction(1, 1000)


def max_sc_value(inst: ScInstance, choice: Sequence[Pick]) -> Fraction:
    return union_length(inst.chosen(choice))


def contiguous_value(inst: ScInstance, choice: Sequence[Pick]) -> tuple[Fraction, Interval]:
    """Longest connected covered piece of the target; ties go to the leftmost."""
    best = Interval(inst.target.lo, inst.target.lo)
    for iv in merge(inst.chosen(choice)):
        if iv.length > best.length:
            best = iv
    return best.length, best


@dataclass(frozen=True)
class WeightedCnf:
    num_vars: int
    clauses: tuple[tuple[frozenset, Fraction], ...]

    def satisfied_weight(self, assignment: Sequence[bool]) -> Fraction:
        return sum((w for c, w in self.clauses if any(lit_value(l, assignment) for l in c)), Fraction(0))

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.clauses), Fraction(0))

    def expectation_bound(self) -> Fraction:
        """Sum of w * (1 - 2^-|c|) over nonempty clauses."""
        return sum((w * (1 - Fraction(1, 2 ** len(c))) for c, w in self.clauses if c), Fraction(0))


def sc_to_weighted_maxsat(inst: ScInstance) -> WeightedCnf:
    """One clause per positive-length cell, weighted by its length.

    Assignments and choices correspond as in the CONTIGUOUS SAT encoding
    (variable k+1 TRUE picks FIRST of segment k).
    """
    clauses = []
    for cell, cov in clause_cells(inst):
        lits = frozenset((k + 1) if p == Pick.FIRST else -(k + 1) for k, p in cov)
        clauses.append((lits, cell.length))
    return WeightedCnf(len(inst.segments), tuple(clauses))


def _expected(wcnf: WeightedCnf, fixed: dict[int, bool]) -> Fraction:
    total = Fraction(0)
    for lits, w in wcnf.clauses:
        free = set()
        sat = False
        for l in lits:
            v = abs(l)
            if v in fixed:
                if fixed[v] == (l > 0):
                    sat = True
                    break
            else:
                free.add(l)
        if sat or any(-l in free for l in free):
            total += w
        elif free:
            total += w * (1 - Fraction(1, 2 ** len({abs(l) for l in free})))
    return total


def greedy_maxsat(wcnf: WeightedCnf) -> tuple[bool, ...]:
    """Derandomized uniform assignment by conditional expectations."""
    fixed: dict[int, bool] = {}
    for v in range(1, wcnf.num_vars + 1):
        if_true = _expected(wcnf, {**fixed, v: True})
        if_false = _expected(wcnf, {**fixed, v: False})
        fixed[v] = if_true >= if_false
    return tuple(fixed[v] for v in range(1, wcnf.num_vars + 1))


def approx_max_sc(inst: ScInstance) -> tuple[tuple[Pick, ...], Fraction]:
    choice = assignment_to_choice(greedy_maxsat(sc_to_weighted_maxsat(inst)))
    return choice, max_sc_value(inst, choice)


def write_wdimacs(wcnf: WeightedCnf) -> str:
    """Integer weights after scaling by the common denominator (recorded as a comment)."""
    scale = math.lcm(1, *(w.denominator for _, w in wcnf.clauses))
    lines = [f"c weights scaled by {scale}", f"p wcnf {wcnf.num_vars} {len(wcnf.clauses)}"]
    for lits, w in wcnf.clauses:
        body = sorted(lits, key=lambda l: (abs(l), l < 0))
        lines.append(" ".join(map(str, [int(w * scale), *body, 0])))
    return "\n".join(lines) + "\n"


# --- gap construction -------------------------------------------------------

@dataclass(frozen=True)
class GapVertex:
    var: int
    positive: bool
    slot: Optional[tuple[int, int]]  # None for dummy vertices
    index: int = 0  # distinguishes dummies of the same variable

    @property
    def dummy(self) -> bool:
        return self.slot is None


@dataclass(frozen=True)
class GapEdge:
    segment: int
    positive: GapVertex
    negative: GapVertex


@dataclass(frozen=True)
class GapGraph:
    var: int
    positive: tuple[GapVertex, ...]
    negative: tuple[GapVertex, ...]
    edges: tuple[GapEdge, ...]

    def dummy_side(self) -> Optional[bool]:
        """True/False if the dummies sit on the positive/negative side, None if absent."""
        if any(v.dummy for v in self.positive):
            return True
        if any(v.dummy for v in self.negative):
            return False
        return None


@dataclass(frozen=True)
class GapInstance:
    instance: ScInstance
    formula: CnfFormula
    epsilon: Fraction
    j_prime: Interval
    t_segments: tuple[tuple[int, int], ...]  # per clause
    graphs: tuple[GapGraph, ...]
    slots: dict = field(default_factory=dict)

    @property
    def width(self) -> Fraction:
        return self.instance.target.length

    def third(self, j: int, k: int) -> Interval:
        start = 3 * (j - 1) + (k - 1)
        return Interval(start, start + 1)

    def clause_interval(self, j: int) -> Interval:
        return Interval(3 * (j - 1), 3 * j)


def gap_instance_from_e3sat(formula: CnfFormula, epsilon: Fraction = DEFAULT_EPSILON) -> GapInstance:
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    for j, clause in enumerate(formula.clauses, 1):
        if len(clause) != 3:
            raise ValueError(f"clause {j} has {len(clause)} literals, expected 3")
    s = len(formula.clauses)
    slots = slot_map(formula)
    j_prime = Interval(3 * s, 3 * s + epsilon)
    segments: list[UncertainSegment] = []
    t_segments = []
    for j in range(1, s + 1):
        start = 3 * (j - 1)
        thirds = [Interval(start + k, start + k + 1) for k in range(3)]
        t_segments.append((len(segments), len(segments) + 1))
        segments.extend(clause_segments(thirds, j))

    sides: list[tuple[list[GapVertex], list[GapVertex]]] = [([], []) for _ in range(formula.num_vars)]
    for (j, k), lit in sorted(slots.items()):
        sides[abs(lit) - 1][0 if lit > 0 else 1].append(GapVertex(abs(lit), lit > 0, (j, k)))
    for i, (pos, neg) in enumerate(sides, 1):
        short, positive = (pos, True) if len(pos) < len(neg) else (neg, False)
        for d in range(abs(len(pos) - len(neg))):
            short.append(GapVertex(i, positive, None, d))

    dummy_edges = sum(sum(1 for a in p for b in n if a.dummy or b.dummy) for p, n in sides)
    j_parts = iter(j_prime.split(dummy_edges)) if dummy_edges else iter(())

    def real_parts(v: GapVertex, degree: int) -> list[Interval]:
        j, k = v.slot
        return Interval(3 * (j - 1) + k - 1, 3 * (j - 1) + k).split(degree)

    graphs = []
    for i, (pos, neg) in enumerate(sides, 1):
        m = len(pos)
        parts = {v: real_parts(v, m) for v in pos + neg if not v.dummy}
        edges = []
        for a, p in enumerate(pos):
            for b, n in enumerate(neg):
                first = next(j_parts) if p.dummy else parts[p][b]
                second = next(j_parts) if n.dummy else parts[n][a]
                edges.append(GapEdge(len(segments), p, n))
                segments.append(UncertainSegment(first, second, f"S{i}:{a}-{b}"))
        graphs.append(GapGraph(i, tuple(pos), tuple(neg), tuple(edges)))

    inst = ScInstance(tuple(segments), Interval(0, 3 * s + epsilon))
    return GapInstance(inst, formula, epsilon, j_prime, tuple(t_segments), tuple(graphs), slots)


def _t_covered(picks: Sequence[Pick], tseg: tuple[int, int]) -> set[int]:
    a, b = picks[tseg[0]], picks[tseg[1]]
    return {1 if a == Pick.FIRST else 2, 2 if b == Pick.FIRST else 3}


@dataclass(frozen=True)
class RepairResult:
    choice: tuple[Pick, ...]
    assignment: tuple[bool, ...]
    cases: tuple[int, ...]  # case number applied per variable


def repair_and_extract(gap: GapInstance, choice: Sequence[Pick]) -> RepairResult:
    """Normalize a choice so each clause interval is covered fully or in exactly
    two thirds, and read off the assignment that satisfies the full ones."""
    picks = list(choice)
    if len(picks) != len(gap.instance.segments):
        raise ValueError("choice length does not match the instance")

    # (a) never keep a part of J'.
    for g in gap.graphs:
        for e in g.edges:
            if e.positive.dummy and picks[e.segment] == Pick.FIRST:
                picks[e.segment] = Pick.SECOND
            elif e.negative.dummy and picks[e.segment] == Pick.SECOND:
                picks[e.segment] = Pick.FIRST

    # (b) clause segments covering only the middle third now cover thirds 1 and 2.
    for tseg in gap.t_segments:
        if _t_covered(picks, tseg) == {2}:
            picks[tseg[0]] = Pick.FIRST

    uncovered = {}
    for j, tseg in enumerate(gap.t_segments, 1):
        (k,) = {1, 2, 3} - _t_covered(picks, tseg)
        uncovered[(j, k)] = True

    # (c) one side per variable; every edge points at that side.
    values, cases = [], []
    for g in gap.graphs:
        open_pos = any(v.slot in uncovered for v in g.positive if not v.dummy)
        open_neg = any(v.slot in uncovered for v in g.negative if not v.dummy)
        dummies = g.dummy_side()
        if open_pos != open_neg:
            side = open_pos
            case = (1 if dummies is not False else 2) if side else (3 if dummies is not True else 4)
            for e in g.edges:
                if not (e.positive.dummy or e.negative.dummy):
                    picks[e.segment] = Pick.FIRST if side else Pick.SECOND
        else:
            case = 5
            if dummies is None:
                n_pos = sum(1 for v in g.positive if v.slot in uncovered)
                n_neg = sum(1 for v in g.negative if v.slot in uncovered)
                side = n_pos >= n_neg
            else:
                side = not dummies
            for e in g.edges:
                picks[e.segment] = Pick.FIRST if side else Pick.SECOND
        values.append(side)
        cases.append(case)

    # (d) satisfied clauses leave out a true literal, whose third the edges now cover.
    assignment = tuple(values)
    for j, tseg in enumerate(gap.t_segments, 1):
        k = next((k for k in (1, 2, 3) if lit_value(gap.slots[(j, k)], assignment)), None)
        if k is not None:
            picks[tseg[0]], picks[tseg[1]] = t_picks_leaving_out(k)
    return RepairResult(tuple(picks), assignment, tuple(cases))


def clause_coverage(gap: GapInstance, choice: Sequence[Pick]) -> list[Fraction]:
    """Covered length of each clause interval."""
    chosen = gap.instance.chosen(choice)
    out = []
    for j in range(1, len(gap.formula.clauses) + 1):
        ci = gap.clause_interval(j)
        clipped = [Interval(max(iv.lo, ci.lo), min(iv.hi, ci.hi)) for iv in chosen if iv.lo < ci.hi and iv.hi > ci.lo]
        out.append(union_length(clipped))
    return out


def gap_choice_from_assignment(gap: GapInstance, assignment: Sequence[bool]) -> tuple[Pick, ...]:
    """Edges toward the true side (away from dummies when forced), T leaving out a true literal."""
    picks = [Pick.FIRST] * len(gap.instance.segments)
    for g in gap.graphs:
        side = assignment[g.var - 1]
        for e in g.edges:
            picks[e.segment] = Pick.FIRST if side else Pick.SECOND
            if e.positive.dummy:
                picks[e.segment] = Pick.SECOND
            if e.negative.dummy:
                picks[e.segment] = Pick.FIRST
    for j, tseg in enumerate(gap.t_segments, 1):
        k = next((k for k in (1, 2, 3) if lit_value(gap.slots[(j, k)], assignment)), 1)
        picks[tseg[0]], picks[tseg[1]] = t_picks_leaving_out(k)
    return tuple(picks)


# --- amplifier --------------------------------------------------------------

def _ceil_root(num: int, den: int, p: int) -> int:
    """Smallest integer k >= 0 with k^p >= num/den."""
    if num <= 0:
        return 0
    hi = 1
    while hi ** p * den < num:
        hi *= 2
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** p * den >= num:
            hi = mid
        else:
            lo = mid + 1
    return lo


def amplification_factor(n: Fraction, eps_ratio: Fraction) -> int:
    """ceil((2 n^(1-eps))^(1/eps)) + 1, computed exactly.

    With eps = a/b the inner quantity is the a-th root of 2^b n^(b-a).
    """
    n = Fraction(n)
    eps_ratio = Fraction(eps_ratio)
    if not 0 < eps_ratio < 1:
        raise ValueError("eps_ratio must lie strictly between 0 and 1")
    if n <= 0:
        raise ValueError("target length must be positive")
    a, b = eps_ratio.numerator, eps_ratio.denominator
    x = Fraction(2) ** b * n ** (b - a)
    return _ceil_root(x.numerator, x.denominator, a) + 1


def amplify(inst: ScInstance, eps_ratio: Fraction) -> ScInstance:
    """f translated copies of ``inst`` laid side by side on [0, f n]."""
    n = inst.target.length
    f = amplification_factor(n, eps_ratio)
    segments = []
    for c in range(f):
        shift = c * n - inst.target.lo
        for seg in inst.segments:
            segments.append(UncertainSegment(seg.first.shifted(shift), seg.second.shifted(shift),
                                             f"{seg.label}@{c}" if seg.label else f"@{c}"))
    return ScInstance(tuple(segments), Interval(0, f * n))


def copies_fully_covered(source: ScInstance, amplified: ScInstance, choice: Sequence[Pick]) -> list[int]:
    """Indices of the copies whose own picks cover their own block."""
    k = len(source.segments)
    f = len(amplified.segments) // k if k else 0
    return [c for c in range(f) if is_cover(source, choice[c * k:(c + 1) * k])]
