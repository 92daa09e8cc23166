"""Exact decision procedures for SEGMENT COVER."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from .cnf import write_dimacs
from .core import Pick, ScInstance, is_cover
from .equivalence import clause_cells, sc_to_contiguous_sat

DEFAULT_LIMIT = 24

COVERABLE = "COVERABLE"
UNCOVERABLE = "UNCOVERABLE"


class LimitExceededError(RuntimeError):
    pass


@dataclass
class SolveResult:
    status: str
    witness: Optional[tuple[Pick, ...]] = None
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def coverable(self) -> bool:
        return self.status == COVERABLE

    def to_json(self) -> dict[str, Any]:
        witness = None if self.witness is None else [p.name for p in self.witness]
        return {"status": self.status, "witness": witness, "stats": self.stats}


def _check_limit(inst: ScInstance, limit: Optional[int]) -> None:
    if limit is not None and len(inst.segments) > limit:
        raise LimitExceededError(f"{len(inst.segments)} segments exceeds the exhaustive limit {limit}")


class _Masks:
    """Cells as bit positions; per segment and pick, the cells it covers."""

    def __init__(self, inst: ScInstance):
        cells = clause_cells(inst)
        n = len(inst.segments)
        self.n = n
        self.num_cells = len(cells)
        self.full = (1 << len(cells)) - 1
        self.cover = [[0, 0] for _ in range(n)]
        last = []
        for c, (_, cov) in enumerate(cells):
            for k, p in cov:
                self.cover[k][p] |= 1 << c
            last.append(max((k for k, _ in cov), default=-1))
        # need[d]: cells that no segment at index >= d can still cover.
        self.need = [sum(1 << c for c, l in enumerate(last) if l < d) for d in range(n + 1)]
        # open[d]: the complement, the only cells whose state still matters at depth d.
        self.open = [self.full & ~need for need in self.need]


def solve_brute(inst: ScInstance, limit: Optional[int] = DEFAULT_LIMIT) -> SolveResult:
    """Exhaustive search in lexicographic pick order.

    Branches are cut as soon as a cell has run out of possible coverers, which
    never discards a cover, so the first witness found is the lexicographically
    least of all 2^n choices.
    """
    _check_limit(inst, limit)
    start = time.perf_counter()
    m = _Masks(inst)
    nodes = 0
    picks: list[Pick] = []
    dead: set[tuple[int, int]] = set()  # states already shown to have no cover below them

    def dfs(d: int, covered: int) -> bool:
        nonlocal nodes
        nodes += 1
        if covered & m.need[d] != m.need[d]:
            return False
        if covered == m.full:
            picks.extend([Pick.FIRST] * (m.n - d))
            return True
        key = (d, covered & m.open[d])
        if key in dead:
            return False
        for p in Pick:
            picks.append(p)
            if dfs(d + 1, covered | m.cover[d][p]):
                return True
            picks.pop()
        dead.add(key)
        return False

    found = dfs(0, 0)
    stats = {"nodes": nodes, "cells": m.num_cells, "seconds": round(time.perf_counter() - start, 6)}
    if found:
        witness = tuple(picks)
        assert is_cover(inst, witness)
        return SolveResult(COVERABLE, witness, stats)
    return SolveResult(UNCOVERABLE, None, stats)


def count_covers(inst: ScInstance, limit: Optional[int] = DEFAULT_LIMIT) -> int:
    _check_limit(inst, limit)
    m = _Masks(inst)

    def count(d: int, covered: int) -> int:
        if covered & m.need[d] != m.need[d]:
            return 0
        if covered == m.full:
            return 1 << (m.n - d)
        return count(d + 1, covered | m.cover[d][0]) + count(d + 1, covered | m.cover[d][1])

    return count(0, 0)


def _dpll(clauses: list[frozenset], assignment: dict[int, bool], stats: dict[str, int]) -> Optional[dict[int, bool]]:
    stats["nodes"] += 1
    assignment = dict(assignment)
    while True:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is not None:
            lit = next(iter(unit))
        else:
            lits = {l for c in clauses for l in c}
            lit = next((l for l in sorted(lits, key=abs) if -l not in lits), None)
            if lit is None:
                break
            stats["pure"] += 1
        assignment[abs(lit)] = lit > 0
        reduced = []
        for c in clauses:
            if lit in c:
                continue
            c = c - {-lit}
            if not c:
                return None
            reduced.append(c)
        clauses = reduced
    if not clauses:
        return assignment
    # Leftmost open clause decides the branch variable.
    v = min(abs(l) for l in clauses[0])
    for value in (True, False):
        lit = v if value else -v
        branch = [c - {-lit} for c in clauses if lit not in c]
        if any(not c for c in branch):
            continue
        result = _dpll(branch, {**assignment, v: value}, stats)
        if result is not None:
            return result
    return None


def solve_dpll(inst: ScInstance) -> SolveResult:
    start = time.perf_counter()
    enc = sc_to_contiguous_sat(inst)
    clauses = [frozenset(c) for c in enc.formula.clauses]
    clauses = [c for c in clauses if not any(-l in c for l in c)]
    stats = {"nodes": 0, "pure": 0}
    result = None if any(not c for c in clauses) else _dpll(clauses, {}, stats)
    stats.update(cells=len(enc.cells), seconds=round(time.perf_counter() - start, 6))
    if result is None:
        return SolveResult(UNCOVERABLE, None, stats)
    witness = tuple(Pick.FIRST if result.get(v, True) else Pick.SECOND for v in range(1, len(inst.segments) + 1))
    assert is_cover(inst, witness)
    return SolveResult(COVERABLE, witness, stats)


def dimacs_text(inst: ScInstance) -> str:
    enc = sc_to_contiguous_sat(inst)
    comments = ["contiguous SAT encoding of a segment cover instance",
                "variable k is segment k-1; TRUE picks its first interval"]
    comments += [f"clause {j} cell [{c.lo}, {c.hi}]" for j, c in enumerate(enc.cells, 1)]
    return write_dimacs(enc.formula, comments)


def export_dimacs(inst: ScInstance, path: str | Path) -> None:
    Path(path).write_text(dimacs_text(inst))


def solve(inst: ScInstance, engine: str = "dpll", limit: Optional[int] = DEFAULT_LIMIT) -> SolveResult:
    if engine == "brute":
        return solve_brute(inst, limit)
    if engine == "dpll":
        return solve_dpll(inst)
    raise ValueError(f"unknown engine {engine!r}")


def choice_from_names(names: Sequence[str]) -> tuple[Pick, ...]:
    return tuple(Pick[n] for n in names)
