"""End-to-end property checks of the 3-SAT reduction against brute force."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .cnf import CnfFormula, Decided, brute_force_sat, preprocess_for_reduction, satisfies, write_dimacs
from .core import ScInstance, all_choices, is_cover
from .generate import random_3cnf
from .reduce3sat import assignment_to_choice, choice_to_assignment, expected_segment_count, reduce_3sat_to_sc
from .solver import solve_brute

Reducer = Callable[[CnfFormula], tuple]


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} (checked {self.checked})"


@dataclass
class VerificationReport:
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        for r in self.results:
            if not r.passed:
                lines.append(f"counterexample for {r.name}:")
                lines.extend("  " + l for l in r.counterexample.rstrip("\n").splitlines())
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "properties": [{"name": r.name, "passed": r.passed, "checked": r.checked,
                                "counterexample": r.counterexample} for r in self.results]}


def exhaustive_family(num_vars: int = 3, max_clauses: int = 4) -> Iterable[CnfFormula]:
    """Every set of at most ``max_clauses`` distinct clauses, each over three distinct variables."""
    clauses = [tuple(s * v for s, v in zip(signs, vs))
               for vs in itertools.combinations(range(1, num_vars + 1), 3)
               for signs in itertools.product((1, -1), repeat=3)]
    for size in range(1, max_clauses + 1):
        for combo in itertools.combinations(clauses, size):
            yield CnfFormula(num_vars, combo)


def random_family(trials: int, seed: int, max_vars: int = 5, max_clauses: int = 6) -> Iterable[CnfFormula]:
    rng = random.Random(seed)
    for _ in range(trials):
        m = rng.randint(3, max_vars)
        s = rng.randint(1, max_clauses)
        yield random_3cnf(m, s, rng)


def _dump(formula: CnfFormula, note: str) -> str:
    return f"{note}\n{write_dimacs(formula)}"


def t_gadget_ok(inst: ScInstance, cert) -> Optional[str]:
    for g in cert.clause_gadgets:
        a, b = inst.segments[g.segments[0]], inst.segments[g.segments[1]]
        achieved = set()
        for pa, pb in all_choices(2):
            chosen = [a.pick(pa), b.pick(pb)]
            covered = frozenset(k for k, third in enumerate(g.thirds, 1) if any(iv.contains(third) for iv in chosen))
            if len(covered) > 2:
                return f"clause {g.j}: picks {pa.name},{pb.name} cover all thirds"
            achieved.add(covered)
        for pair in ({1, 2}, {2, 3}, {1, 3}):
            if not any(pair <= c for c in achieved):
                return f"clause {g.j}: thirds {sorted(pair)} never covered together"
    return None


def check_formula(formula: CnfFormula, reducer: Reducer = reduce_3sat_to_sc):
    """Yields (property name, failure message or None) for one formula."""
    sat = brute_force_sat(formula)
    pre = preprocess_for_reduction(formula)
    if isinstance(pre, Decided):
        ok = pre.satisfiable == (sat is not None) and (not pre.satisfiable or satisfies(formula, pre.witness))
        yield "equivalence", None if ok else "preprocessing decided wrongly"
        return
    reduced = pre.formula
    try:
        inst, cert = reducer(reduced)
    except Exception as exc:  # a broken reducer is a failure, not a crash
        yield "equivalence", f"reducer raised {exc!r}"
        return
    yield "size", (None if len(inst.segments) == expected_segment_count(reduced)
                   else f"{len(inst.segments)} segments, expected {expected_segment_count(reduced)}")
    yield "clause-gadget", t_gadget_ok(inst, cert)
    result = solve_brute(inst, limit=None)
    if result.coverable != (sat is not None):
        yield "equivalence", f"satisfiable={sat is not None} but coverable={result.coverable}"
        return
    msg = None
    try:
        if sat is not None:
            rsat = brute_force_sat(reduced)
            if not is_cover(inst, assignment_to_choice(cert, rsat)):
                msg = "satisfying assignment does not lift to a cover"
            lifted = pre.lift(choice_to_assignment(cert, inst, result.witness))
            if not satisfies(formula, lifted):
                msg = "cover does not lift to a satisfying assignment"
    except (AssertionError, ValueError) as exc:
        msg = f"witness lifting failed: {exc}"
    yield "equivalence", msg


def run_verification(formulas: Iterable[CnfFormula], reducer: Reducer = reduce_3sat_to_sc) -> VerificationReport:
    results = {name: PropertyResult(name) for name in ("equivalence", "size", "clause-gadget")}
    for formula in formulas:
        for name, failure in check_formula(formula, reducer):
            r = results[name]
            r.checked += 1
            if failure and r.passed:
                r.counterexample = _dump(formula, failure)
    return VerificationReport(list(results.values()))
