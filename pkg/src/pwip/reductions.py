"""CNF-SAT to (IP) constructions and their satisfying-assignment witnesses.

``reduce_pathwidth`` chains one clause gadget per clause along the diagonal of
the constraint matrix. Each gadget has, for every variable block ``i`` and
block assignment ``j``, a pair of columns. Its rows are

* predecessor rows (shared with the previous gadget): ``j`` on block ``i``'s row,
* one evaluation row: ``1`` on the second column of the pair iff block
  assignment ``j`` satisfies the clause,
* successor rows (shared with the next gadget): ``L - 1 - j`` on block ``i``'s
  row, then a selector row of ones.

The first gadget has no predecessor rows and the last gadget keeps only the
selector rows of its successor part. Targets are ``L - 1`` on the shared
assignment rows and ``1`` elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from pwip.cnf import BlockScheme, CnfFormula, block_satisfies
from pwip.errors import ContractError, WitnessError
from pwip.matroid import PathOrdering

Meta = dict[str, int | str]


@dataclass(frozen=True)
class IpInstance:
    """``A x = b, x >= 0`` over the integers, optionally with a column ordering."""

    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    ordering: PathOrdering | None = None
    meta: Meta = field(default_factory=dict, compare=False)

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        b = tuple(int(x) for x in self.b)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if len(b) != len(A):
            raise ContractError(f"b has length {len(b)} but A has {len(A)} rows")
        n = len(A[0]) if A else 0
        for row in A:
            if len(row) != n:
                raise ContractError("ragged constraint matrix")
        if self.ordering is not None:
            ordering = self.ordering
            if not isinstance(ordering, PathOrdering):
                ordering = PathOrdering(tuple(ordering))
                object.__setattr__(self, "ordering", ordering)
            if len(ordering) != n:
                raise ContractError(f"ordering has length {len(ordering)} for {n} columns")

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0]) if self.A else 0

    @property
    def d(self) -> int:
        return max(self.b, default=0)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.A)

    def sparse_column(self, j: int) -> dict[int, int]:
        return {q: row[j] for q, row in enumerate(self.A) if row[j]}

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.A for x in row) and all(x >= 0 for x in self.b)

    def evaluate(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.n:
            raise ContractError(f"vector of length {len(x)} for {self.n} columns")
        return tuple(sum(a * xi for a, xi in zip(row, x) if a) for row in self.A)

    def is_solution(self, x: Sequence[int]) -> bool:
        return all(xi >= 0 for xi in x) and self.evaluate(x) == self.b

    def with_ordering(self, ordering: PathOrdering | Sequence[int] | None) -> IpInstance:
        return IpInstance(self.A, self.b, ordering, dict(self.meta))


@dataclass(frozen=True)
class IpWitness:
    x: tuple[int, ...]


def _layout(m: int, c: int):
    """Row helpers for clause ``r`` (0-based) and block ``i``."""
    band = 2 * c + 1

    def eval_row(r):
        return r * band

    def succ_row(r, i):
        return r * band + 2 * i + 1

    def sel_row(r, i):
        if r == m - 1:
            return r * band + i + 1
        return r * band + 2 * i + 2

    return eval_row, succ_row, sel_row


def pathwidth_dims(num_clauses: int, num_vars: int, c: int) -> tuple[int, int]:
    ell = -(-num_vars // c)
    return (num_clauses - 1) * (2 * c + 1) + c + 1, num_clauses * c * (1 << (ell + 1))


def reduce_pathwidth(phi: CnfFormula, c: int) -> IpInstance:
    if c < 2:
        raise ContractError(f"the construction needs c >= 2, got {c}")
    m = phi.num_clauses
    if m < 2:
        raise ContractError(
            "the construction needs at least two clauses (first and last gadgets differ); "
            "duplicate the clause of a single-clause formula"
        )
    scheme = BlockScheme.for_formula(phi.num_vars, c)
    L, W = scheme.L, 2 * scheme.L
    rows, cols = pathwidth_dims(m, phi.num_vars, c)
    eval_row, succ_row, sel_row = _layout(m, c)
    A = [[0] * cols for _ in range(rows)]
    for r in range(m):
        for i in range(c):
            for j in range(L):
                col = r * c * W + i * W + 2 * j
                sat = block_satisfies(scheme, phi, r, i, j)
                for g in (0, 1):
                    if r > 0:
                        A[succ_row(r - 1, i)][col + g] = j
                    if r < m - 1:
                        A[succ_row(r, i)][col + g] = L - 1 - j
                    A[sel_row(r, i)][col + g] = 1
                A[eval_row(r)][col + 1] = int(sat)
    b = [1] * rows
    for r in range(m - 1):
        for i in range(c):
            b[succ_row(r, i)] = L - 1
    meta = {
        "construction": "pathwidth",
        "c": c,
        "ell": scheme.ell,
        "L": L,
        "vars": phi.num_vars,
        "clauses": m,
    }
    return IpInstance(tuple(map(tuple, A)), tuple(b), PathOrdering.natural(cols), meta)


def clause_block(inst: IpInstance, r: int) -> list[list[int]]:
    """The gadget of clause ``r`` (0-based) cut out of a path-width instance."""
    c, m, W = int(inst.meta["c"]), int(inst.meta["clauses"]), 2 * int(inst.meta["L"])
    band = 2 * c + 1
    top = 0 if r == 0 else (r - 1) * band + 1
    height = {0: 2 * c + 1, m - 1: 3 * c + 1}.get(r, 4 * c + 1)
    left = r * c * W
    return [list(inst.A[q][left : left + c * W]) for q in range(top, top + height)]


def _require(inst: IpInstance, construction: str):
    if inst.meta.get("construction") != construction:
        raise ContractError(f"expected an instance built by the {construction} construction")


def witness_pathwidth(inst: IpInstance, assignment: Sequence[bool]) -> IpWitness:
    """The 0/1 certificate of a satisfying assignment.

    Every (clause, block) column group gets exactly one selected column, the
    pair belonging to the block's assignment. For each clause the least block
    whose assignment satisfies it takes the second column of its pair, which
    carries the evaluation ``1``; all other blocks take the first column.
    Clause satisfaction is read off the instance's evaluation rows.
    """
    _require(inst, "pathwidth")
    c, m, L = int(inst.meta["c"]), int(inst.meta["clauses"]), int(inst.meta["L"])
    scheme = BlockScheme.for_formula(int(inst.meta["vars"]), c)
    if len(assignment) < scheme.num_vars:
        raise ContractError(f"assignment covers {len(assignment)} of {scheme.num_vars} variables")
    W = 2 * L
    eval_row, _, _ = _layout(m, c)
    js = [scheme.block_index(assignment, i) for i in range(c)]
    x = [0] * inst.n
    for r in range(m):
        base = r * c * W
        chosen = next((i for i in range(c) if inst.A[eval_row(r)][base + i * W + 2 * js[i] + 1] == 1), None)
        if chosen is None:
            raise WitnessError(f"assignment does not satisfy clause {r + 1}")
        for i in range(c):
            x[base + i * W + 2 * js[i] + (1 if i == chosen else 0)] = 1
    if not inst.is_solution(x):
        raise WitnessError("constructed vector does not solve the instance")
    return IpWitness(tuple(x))


def reduce_binary(phi: CnfFormula, c: int) -> IpInstance:
    """Path-width construction with every row holding an entry above 1 split into bits.

    A row with entries ``W`` becomes ``ell`` rows; row ``k`` carries bit ``k``
    (coefficient of ``2^k``) of each entry. All targets become ``1``.
    """
    base = reduce_pathwidth(phi, c)
    ell = int(base.meta["ell"])
    A: list[tuple[int, ...]] = []
    for row in base.A:
        if max(row) > 1:
            A.extend(tuple(w >> k & 1 for w in row) for k in range(ell))
        else:
            A.append(row)
    meta = dict(base.meta, construction="binary")
    return IpInstance(tuple(A), (1,) * len(A), PathOrdering.natural(base.n), meta)


def reduce_eth(phi: CnfFormula) -> IpInstance:
    """The 3-CNF construction with ``2m + n`` rows and ``2(m + n)`` columns.

    Rows: one per clause (target 3), one per variable (target 1), one slack row
    per clause (target 2). Columns: ``x_i``, ``not x_i`` for each variable, then
    a clause column and its slack partner for each clause.
    """
    for k, clause in enumerate(phi.clauses):
        if len(clause) != 3:
            raise ContractError(f"clause {k + 1} has {len(clause)} literals; the construction needs 3-CNF")
    n, m = phi.num_vars, phi.num_clauses
    rows, cols = 2 * m + n, 2 * (m + n)
    A = [[0] * cols for _ in range(rows)]
    for j, clause in enumerate(phi.clauses):
        for lit in clause:
            A[j][2 * (abs(lit) - 1) + (0 if lit > 0 else 1)] = 1
    for i in range(n):
        A[m + i][2 * i] = A[m + i][2 * i + 1] = 1
    for j in range(m):
        A[j][2 * n + 2 * j] = 1
        A[m + n + j][2 * n + 2 * j] = A[m + n + j][2 * n + 2 * j + 1] = 1
    b = (3,) * m + (1,) * n + (2,) * m
    meta = {"construction": "eth", "vars": n, "clauses": m}
    return IpInstance(tuple(map(tuple, A)), b, PathOrdering.natural(cols), meta)


def witness_eth(inst: IpInstance, assignment: Sequence[bool]) -> IpWitness:
    """Literal columns follow the assignment; each clause's slack pair is
    ``(3 - t, t - 1)`` where ``t`` counts the clause's true literal columns."""
    _require(inst, "eth")
    n, m = int(inst.meta["vars"]), int(inst.meta["clauses"])
    if len(assignment) < n:
        raise ContractError(f"assignment covers {len(assignment)} of {n} variables")
    x = [0] * inst.n
    for i in range(n):
        x[2 * i + (0 if assignment[i] else 1)] = 1
    for j in range(m):
        t = sum(inst.A[j][k] * x[k] for k in range(2 * n))
        if t == 0:
            raise WitnessError(f"assignment does not satisfy clause {j + 1}")
        x[2 * n + 2 * j] = 3 - t
        x[2 * n + 2 * j + 1] = t - 1
    if not inst.is_solution(x):
        raise WitnessError("constructed vector does not solve the instance")
    return IpWitness(tuple(x))
