"""CNF formulas, DIMACS I/O, a brute-force SAT oracle and block indexing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from pwip.errors import ContractError, ParseError, SizeError

MAX_BRUTE_FORCE_VARS = 24

Assignment = tuple[bool, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise ContractError("negative variable count")
        for k, clause in enumerate(clauses):
            if not clause:
                raise ContractError(f"clause {k + 1} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ContractError(f"literal {lit} in clause {k + 1} outside 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(clause_satisfied(c, assignment) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def clause_satisfied(clause: Sequence[int], assignment: Sequence[bool]) -> bool:
    return any(bool(assignment[abs(l) - 1]) == (l > 0) for l in clause)


def parse_dimacs(text: str | bytes) -> CnfFormula:
    """Parse DIMACS CNF.

    Clauses may span lines and several may share one; each ends at a ``0``.
    A line starting with ``%`` ends the file (old SATLIB convention).
    """
    if isinstance(text, bytes):
        text = text.decode()
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError(f"malformed header {line!r}", lineno)
            continue
        if header is None:
            raise ParseError("clause before the 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} out of range 1..{header[0]}", lineno)
            if not current:
                current_line = lineno
            current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("clause not terminated by 0", current_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def brute_force_sat(phi: CnfFormula, max_vars: int = MAX_BRUTE_FORCE_VARS) -> Assignment | None:
    """First satisfying assignment in index order, or ``None``.

    Assignment number ``k`` sets variable ``v`` to bit ``v - 1`` of ``k``.
    Enumeration is vectorised in chunks of ``2^16``.
    """
    n = phi.num_vars
    if n > max_vars:
        raise SizeError(f"brute-force SAT is limited to {max_vars} variables, got {n}")
    chunk = 1 << min(n, 16)
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        ok = np.ones(chunk, dtype=bool)
        for clause in phi.clauses:
            sat = np.zeros(chunk, dtype=bool)
            for lit in clause:
                bit = (idx >> (abs(lit) - 1)) & 1
                sat |= bit == (1 if lit > 0 else 0)
            ok &= sat
            if not ok.any():
                break
        hits = np.flatnonzero(ok)
        if hits.size:
            k = int(idx[hits[0]])
            return tuple(bool(k >> v & 1) for v in range(n))
    return None


@dataclass(frozen=True)
class BlockScheme:
    """Split of the (padded) variables into ``c`` blocks of ``ell`` variables.

    Block ``i`` holds variables ``i*ell + 1 .. (i+1)*ell``; variables beyond
    ``num_vars`` are dummies that occur in no clause.
    """

    num_vars: int
    c: int
    ell: int
    padded_n: int
    L: int

    @classmethod
    def for_formula(cls, num_vars: int, c: int) -> BlockScheme:
        if c < 1:
            raise ContractError(f"block count must be positive, got {c}")
        ell = -(-num_vars // c)
        return cls(num_vars, c, ell, c * ell, 1 << ell)

    def block_of(self, var: int) -> int:
        return (var - 1) // self.ell

    def block_index(self, assignment: Sequence[bool], i: int) -> int:
        """The ``j`` with ``block_assignment(i, j)`` equal to the restriction of ``assignment``."""
        j = 0
        for k in range(self.ell):
            v = i * self.ell + k
            bit = bool(assignment[v]) if v < len(assignment) else False
            j = (j << 1) | bit
        return j


def block_assignment(scheme: BlockScheme, i: int, j: int) -> dict[int, bool]:
    """Truth values of block ``i`` under assignment number ``j``.

    The first variable of the block is the most significant of the ``ell`` bits,
    so ``j = 1`` sets only the last variable.
    """
    if not 0 <= i < scheme.c:
        raise ContractError(f"block {i} outside 0..{scheme.c - 1}")
    if not 0 <= j < scheme.L:
        raise ContractError(f"assignment {j} outside 0..{scheme.L - 1}")
    ell = scheme.ell
    return {i * ell + k + 1: bool(j >> (ell - 1 - k) & 1) for k in range(ell)}


def block_satisfies(scheme: BlockScheme, phi: CnfFormula, r: int, i: int, j: int) -> bool:
    """Whether the block-``i`` assignment ``j`` alone makes clause ``r`` (0-based) true."""
    values = block_assignment(scheme, i, j)
    return any(abs(l) in values and values[abs(l)] == (l > 0) for l in phi.clauses[r])
