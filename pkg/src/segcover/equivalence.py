"""Linear-time translations between SEGMENT COVER and CONTIGUOUS SAT.

SC -> CSAT: one variable per segment (TRUE means pick FIRST), one clause per
positive-length cell, left to right. A literal occurs exactly in the cells its
interval contains, which are consecutive, so the output is always contiguous.

CSAT -> SC: clause j owns the j-th of s equal cells of [0, 1]; each polarity of
a variable becomes the union of the cells of its clauses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cnf import CnfFormula
from .core import Interval, Pick, ScInstance, UncertainSegment, decompose_cells


@dataclass(frozen=True)
class ContiguityReport:
    occurrences: dict[int, tuple[int, ...]]  # literal -> sorted 1-based clause indices
    verdict: bool

    def violations(self) -> list[int]:
        return sorted((l for l, js in self.occurrences.items() if not _consecutive(js)), key=lambda l: (abs(l), l < 0))


def _consecutive(js: Sequence[int]) -> bool:
    return not js or js[-1] - js[0] + 1 == len(js)


def check_contiguity(formula: CnfFormula) -> ContiguityReport:
    occ: dict[int, set[int]] = {}
    for j, clause in enumerate(formula.clauses, 1):
        for lit in clause:
            occ.setdefault(lit, set()).add(j)
    occurrences = {l: tuple(sorted(js)) for l, js in occ.items()}
    return ContiguityReport(occurrences, all(_consecutive(js) for js in occurrences.values()))


def choice_to_assignment(choice: Sequence[Pick]) -> tuple[bool, ...]:
    return tuple(p == Pick.FIRST for p in choice)


def assignment_to_choice(assignment: Sequence[bool]) -> tuple[Pick, ...]:
    return tuple(Pick.FIRST if v else Pick.SECOND for v in assignment)


@dataclass(frozen=True)
class ScToCsat:
    formula: CnfFormula
    cells: tuple[Interval, ...]  # clause j+1 is the encoding of cells[j]

    # The witness maps are the same fixed bijection in both directions.
    to_choice = staticmethod(assignment_to_choice)
    to_assignment = staticmethod(choice_to_assignment)


def clause_cells(inst: ScInstance) -> list[tuple[Interval, frozenset]]:
    return decompose_cells(inst).positive()


def sc_to_contiguous_sat(inst: ScInstance) -> ScToCsat:
    clauses = []
    cells = []
    for cell, cov in clause_cells(inst):
        clause = sorted({(k + 1) if p == Pick.FIRST else -(k + 1) for k, p in cov},
                        key=lambda l: (abs(l), l < 0))
        clauses.append(tuple(clause))
        cells.append(cell)
    return ScToCsat(CnfFormula(len(inst.segments), tuple(clauses)), tuple(cells))


@dataclass(frozen=True)
class CsatToSc:
    instance: ScInstance

    to_choice = staticmethod(assignment_to_choice)
    to_assignment = staticmethod(choice_to_assignment)


def contiguous_sat_to_sc(formula: CnfFormula) -> CsatToSc:
    report = check_contiguity(formula)
    if not report.verdict:
        raise ValueError(f"formula is not contiguous; offending literals {report.violations()}")
    s = len(formula.clauses)
    if s == 0:
        # No clause, nothing to cover: a degenerate target is trivially covered.
        point = Interval(Fraction(0), Fraction(0))
        segs = [UncertainSegment(point, point, f"x{v}") for v in range(1, formula.num_vars + 1)]
        return CsatToSc(ScInstance(tuple(segs), point))

    def block(lit: int) -> Interval:
        js = report.occurrences.get(lit)
        if not js:
            return Interval(Fraction(0), Fraction(0))
        return Interval(Fraction(js[0] - 1, s), Fraction(js[-1], s))

    segs = [UncertainSegment(block(v), block(-v), f"x{v}") for v in range(1, formula.num_vars + 1)]
    return CsatToSc(ScInstance(tuple(segs)))
