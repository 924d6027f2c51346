"""3-Occurrence 3-SAT formulas: DIMACS I/O, occurrence bookkeeping, brute force.

Literals are DIMACS-style signed integers: ``+i`` is ``x_i`` and ``-i`` its
negation, with variables numbered from 1.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CnfError, GuardError

MAX_CLAUSE_SIZE = 3
MAX_OCCURRENCES = 3
BRUTE_FORCE_LIMIT = 24


@dataclass(frozen=True)
class Occurrence:
    clause: int  # 1-based
    slot: int  # 1-based


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))

    @property
    def n(self) -> int:
        return self.variable_count

    @property
    def m(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> dict[int, list[Occurrence]]:
        """Sites of each variable, in clause-then-slot order."""
        sites: dict[int, list[Occurrence]] = defaultdict(list)
        for j, clause in enumerate(self.clauses, 1):
            for k, lit in enumerate(clause, 1):
                sites[abs(lit)].append(Occurrence(j, k))
        return dict(sites)

    def check(self) -> None:
        """Raise :class:`CnfError` unless this is a valid 3-Occurrence 3-SAT instance."""
        if self.variable_count < 0:
            raise CnfError("negative variable count")
        for j, clause in enumerate(self.clauses, 1):
            if not 1 <= len(clause) <= MAX_CLAUSE_SIZE:
                raise CnfError(f"clause {j} has {len(clause)} literals; sizes 1-3 are allowed")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise CnfError(f"clause {j} mentions variable {abs(lit)} outside 1..{self.variable_count}")
        violations = validate_occurrence(self)
        if violations:
            var, sites = violations[0]
            fourth = sites[MAX_OCCURRENCES]
            raise CnfError(
                f"variable {var} occurs {len(sites)} times; occurrence 4 is clause {fourth.clause}, slot {fourth.slot}"
            )

    def evaluate(self, assignment: dict[int, int]) -> bool:
        return all(
            any((assignment[abs(l)] == 1) == (l > 0) for l in clause) for clause in self.clauses
        )

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.variable_count} {self.m}"]
        lines += [" ".join(map(str, clause)) + " 0" for clause in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF, preserving clause order and literal order."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise CnfError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfError(f"line {lineno}: non-integer counts in problem line") from None
            continue
        if header is None:
            raise CnfError(f"line {lineno}: clause before the problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise CnfError("missing problem line")
    if current:
        clauses.append(tuple(current))
    n, m = header
    if len(clauses) != m:
        raise CnfError(f"problem line announces {m} clauses, found {len(clauses)}")
    formula = CnfFormula(n, tuple(clauses))
    formula.check()
    return formula


def read_dimacs(path: str | Path) -> CnfFormula:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))


def validate_occurrence(f: CnfFormula) -> list[tuple[int, list[Occurrence]]]:
    """Every variable occurring more than three times, with all its sites.

    An empty list means the occurrence bound holds.
    """
    return [
        (var, sites)
        for var, sites in sorted(f.occurrences().items())
        if len(sites) > MAX_OCCURRENCES
    ]


def literal_positions(f: CnfFormula) -> dict[tuple[int, int], int]:
    """Occurrence rank (1, 2 or 3) of the literal at each 1-based (clause, slot).

    Ranks are handed out per variable scanning clauses in order and, within a
    clause, slots in order; that scan is the tie-break for repeated variables.
    """
    seen: dict[int, int] = defaultdict(int)
    ranks = {}
    for j, clause in enumerate(f.clauses, 1):
        for k, lit in enumerate(clause, 1):
            seen[abs(lit)] += 1
            ranks[(j, k)] = seen[abs(lit)]
    return ranks


def brute_force_sat(f: CnfFormula, limit: int = BRUTE_FORCE_LIMIT) -> dict[int, int] | None:
    """Exhaustively decide satisfiability.

    Returns the satisfying assignment with the smallest index
    ``sum(x_i << (i - 1))``, or ``None`` when unsatisfiable.
    """
    n = f.variable_count
    if n > limit:
        raise GuardError(
            "variables",
            f"{n} variables exceed the brute-force guard of {limit}; use a real SAT solver",
        )
    chunk = 1 << min(n, 20)
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        ok = np.ones(idx.shape, dtype=bool)
        for clause in f.clauses:
            sat = np.zeros(idx.shape, dtype=bool)
            for lit in clause:
                bit = ((idx >> (abs(lit) - 1)) & 1).astype(bool)
                sat |= bit if lit > 0 else ~bit
            ok &= sat
        hits = np.flatnonzero(ok)
        if hits.size:
            a = int(idx[hits[0]])
            return {i: (a >> (i - 1)) & 1 for i in range(1, n + 1)}
    return None


def pad_to_min_clauses(f: CnfFormula, m_min: int) -> CnfFormula:
    """Append unit clauses on fresh variables until there are ``m_min`` clauses.

    Each fresh variable occurs once, so the occurrence bound and
    satisfiability are both preserved. A no-op when ``f`` already has enough.
    """
    if f.m >= m_min:
        return f
    extra = m_min - f.m
    fresh = tuple((f.variable_count + d,) for d in range(1, extra + 1))
    return CnfFormula(f.variable_count + extra, f.clauses + fresh)


def random_formula(
    rng: random.Random,
    n: int,
    m: int,
    size_weights: tuple[float, float, float] = (1.0, 1.0, 1.0),
) -> CnfFormula:
    """Random valid 3-Occurrence 3-SAT formula with ``n`` variables and ``m`` clauses.

    Clause sizes are drawn with the given weights for sizes 1, 2, 3 and then
    shrunk as needed so the 3n occurrence slots suffice.
    """
    if m > MAX_OCCURRENCES * n:
        raise ValueError(f"{m} clauses cannot fit into {n} variables")
    sizes = rng.choices((1, 2, 3), weights=size_weights, k=m)
    while sum(sizes) > MAX_OCCURRENCES * n:
        big = [j for j, s in enumerate(sizes) if s > 1]
        sizes[rng.choice(big)] -= 1
    slots = [v for v in range(1, n + 1) for _ in range(MAX_OCCURRENCES)]
    rng.shuffle(slots)
    clauses = []
    for s in sizes:
        clause = tuple(v if rng.random() < 0.5 else -v for v in slots[:s])
        slots = slots[s:]
        clauses.append(clause)
    return CnfFormula(n, tuple(clauses))
