"""CNF formulas, DIMACS I/O and the preprocessing the reductions rely on.

Literals are signed DIMACS integers: ``3`` is x3, ``-3`` is its negation.
Clause order is significant everywhere in this package because it is the
ordering that CONTIGUOUS SAT constrains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

Assignment = tuple  # tuple[bool, ...]; entry i is the value of variable i + 1


class DimacsError(ValueError):
    pass


def var(lit: int) -> int:
    return abs(lit)


def is_positive(lit: int) -> bool:
    return lit > 0


def lit_value(lit: int, assignment: Sequence[bool]) -> bool:
    value = assignment[abs(lit) - 1]
    return value if lit > 0 else not value


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        for j, clause in enumerate(clauses, 1):
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {j}: literal {lit} out of range 1..{self.num_vars}")

    def __len__(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: second header")
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad token {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            elif abs(lit) > num_vars:
                raise DimacsError(f"line {lineno}: variable index {abs(lit)} out of range 1..{num_vars}")
            else:
                pending.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("unterminated clause at end of input")
    if len(clauses) != num_clauses:
        raise DimacsError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def write_dimacs(formula: CnfFormula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    lines.extend(" ".join([*map(str, clause), "0"]) for clause in formula.clauses)
    return "\n".join(lines) + "\n"


def evaluate(formula: CnfFormula, assignment: Sequence[bool]) -> set[int]:
    """1-based indices of the clauses the assignment satisfies."""
    if len(assignment) != formula.num_vars:
        raise ValueError(f"assignment covers {len(assignment)} of {formula.num_vars} variables")
    return {j for j, clause in enumerate(formula.clauses, 1)
            if any(lit_value(l, assignment) for l in clause)}


def satisfies(formula: CnfFormula, assignment: Sequence[bool]) -> bool:
    return len(evaluate(formula, assignment)) == len(formula.clauses)


def all_assignments(num_vars: int) -> Iterator[tuple[bool, ...]]:
    return itertools.product((True, False), repeat=num_vars)


def brute_force_sat(formula: CnfFormula) -> Assignment | None:
    """First satisfying assignment in TRUE-before-FALSE order, or None."""
    for a in all_assignments(formula.num_vars):
        if satisfies(formula, a):
            return a
    return None


def is_tautology(clause: Sequence[int]) -> bool:
    lits = set(clause)
    return any(-l in lits for l in lits)


@dataclass(frozen=True)
class OccurrenceProfile:
    positive: tuple[int, ...]
    negative: tuple[int, ...]

    def p(self, v: int) -> int:
        return self.positive[v - 1]

    def n(self, v: int) -> int:
        return self.negative[v - 1]

    @property
    def total(self) -> int:
        return sum(self.positive) + sum(self.negative)

    def edge_count(self) -> int:
        """Sum over variables of p_i * n_i (the size of the variable gadgets)."""
        return sum(p * n for p, n in zip(self.positive, self.negative))


def occurrence_profile(formula: CnfFormula) -> OccurrenceProfile:
    pos = [0] * formula.num_vars
    neg = [0] * formula.num_vars
    for clause in formula.clauses:
        for lit in clause:
            (pos if lit > 0 else neg)[abs(lit) - 1] += 1
    return OccurrenceProfile(tuple(pos), tuple(neg))


@dataclass(frozen=True)
class Reducible:
    """Equisatisfiable remainder plus the variables preprocessing fixed."""

    formula: CnfFormula
    fixed: dict[int, bool] = field(default_factory=dict)

    def lift(self, assignment: Sequence[bool]) -> Assignment:
        return tuple(self.fixed.get(v, assignment[v - 1]) for v in range(1, self.formula.num_vars + 1))


@dataclass(frozen=True)
class Decided:
    satisfiable: bool
    witness: Assignment | None = None


def preprocess_for_reduction(formula: CnfFormula) -> Union[Reducible, Decided]:
    """Drop tautologies and pure literals until every variable has both polarities.

    Variable numbering is kept; eliminated variables simply stop occurring.
    """
    for j, clause in enumerate(formula.clauses, 1):
        if len(clause) != 3:
            raise ValueError(f"clause {j} has {len(clause)} literals, expected 3")
    clauses = [c for c in formula.clauses if not is_tautology(c)]
    fixed: dict[int, bool] = {}
    while True:
        lits = {l for c in clauses for l in c}
        pure = sorted(l for l in lits if -l not in lits)
        if not pure:
            break
        for l in pure:
            fixed[abs(l)] = l > 0
        pure_set = set(pure)
        clauses = [c for c in clauses if not pure_set.intersection(c)]
    if not clauses:
        witness = tuple(fixed.get(v, True) for v in range(1, formula.num_vars + 1))
        return Decided(True, witness)
    return Reducible(CnfFormula(formula.num_vars, tuple(clauses)), fixed)


@dataclass(frozen=True)
class DjpsyReport:
    ok: bool
    bad_variables: tuple[int, ...] = ()
    bad_clauses: tuple[int, ...] = ()


def validate_djpsy_form(formula: CnfFormula, exact: bool = False) -> DjpsyReport:
    """Check the bounded-occurrence form: 3-literal clauses, each variable once
    with one polarity and once or twice with the other.

    ``exact=True`` additionally demands three occurrences per variable, which is
    the form for which the variable gadgets have exactly two edges each.
    """
    prof = occurrence_profile(formula)
    bad_clauses = tuple(j for j, c in enumerate(formula.clauses, 1) if len(c) != 3)
    bad_vars = []
    for v in range(1, formula.num_vars + 1):
        p, n = prof.p(v), prof.n(v)
        ok = p in (1, 2) and n in (1, 2) and p + n <= 3
        if exact and p + n != 3:
            ok = False
        if not ok:
            bad_vars.append(v)
    return DjpsyReport(not bad_clauses and not bad_vars, tuple(bad_vars), bad_clauses)
