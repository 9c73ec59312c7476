"""Feasibility engines for ``A x = b, x >= 0`` with non-negative ``A`` and ``b``.

``solve_pathwidth_dp`` walks the columns in the instance ordering and keeps,
after ``j`` columns, the partial sums ``b'`` with ``0 <= b' <= b`` that lie in
``S(A', [j])``, the intersection of the span of the first ``j`` columns of
``A' = [A, b]`` with the span of the rest. Feasible iff ``b`` survives to the
end.

The subspace filter needs one linear functional per stage. A state ``s`` from
stage ``j - 1`` already lies in ``Q = span(v_j, ..., v_n, b)``. If ``v_j`` is in
``Q' = span(v_{j+1}, ..., v_n, b)`` every ``s + a v_j`` passes. Otherwise a
functional ``y`` that vanishes on ``Q'`` and is non-zero on ``v_j`` decides
membership: ``s + a v_j`` is in ``Q'`` iff ``y.s + a y.v_j == 0``, so at most one
multiplier survives per state. The functionals come from a single right-to-left
pass of :class:`~pwip.exactla.IncrementalSpan`.

States are rows of a numpy array. Duplicate sums are found through a linear
64-bit hash (``h(s + a v) = h(s) + a h(v)``) and then confirmed entry by entry.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from pwip.errors import ContractError, SizeError
from pwip.exactla import IncrementalSpan, sparse
from pwip.reductions import IpInstance, IpWitness

BRUTEFORCE_LIMIT = 10**7
BOX_STATE_LIMIT = 2_000_000
_INT64_SAFE = 1 << 62
_HASH_SEED = 0x5EED_1DEA


@dataclass
class StageStats:
    sizes: list[int] = field(default_factory=list)
    cut_dims: list[int] = field(default_factory=list)
    millis: float = 0.0

    @property
    def max_set(self) -> int:
        return max(self.sizes, default=1)


@dataclass
class SolveReport:
    feasible: bool
    witness: IpWitness | None = None
    method: str = ""
    stats: StageStats = field(default_factory=StageStats)
    d: int = 0


def _check_nonnegative(inst: IpInstance):
    if not inst.is_nonnegative():
        raise ContractError("A and b must be non-negative for this solver")


def _ordered_columns(inst: IpInstance) -> tuple[list[int], list[dict[int, int]]]:
    order = list(inst.ordering) if inst.ordering is not None else list(range(inst.n))
    return order, [inst.sparse_column(j) for j in order]


def stage_functionals(columns: Sequence[dict[int, int]], b: Sequence[int], m: int):
    """Per-stage filter data for the DP over ``A' = [columns..., b]``.

    Returns ``(functionals, cut_dims)``. ``functionals[t]`` is ``None`` when
    column ``t`` lies in the span of the later columns and ``b``; otherwise a pair
    ``(y, y . v_t)``. ``cut_dims[t]`` is ``dim S(A', first t+1 columns)``.
    """
    n = len(columns)
    suffix = IncrementalSpan(m)
    suffix.add(sparse(b))
    functionals: list = [None] * n
    suffix_dim = [0] * (n + 1)
    for t in range(n - 1, -1, -1):
        suffix_dim[t + 1] = suffix.dim
        functionals[t] = suffix.add(columns[t])
    total = suffix.dim
    prefix = IncrementalSpan(m)
    cut_dims = []
    for t in range(n):
        prefix.add(columns[t])
        cut_dims.append(prefix.dim + suffix_dim[t + 1] - total)
    return functionals, cut_dims


class _StateTable:
    """Stage-by-stage DP state with back-references for witness reconstruction."""

    def __init__(self, b: Sequence[int]):
        self.m = len(b)
        d = max(b, default=0)
        # Stored entries and every increment a * v_j never exceed d, so the
        # narrowest integer type holding d is enough; arithmetic runs in int64.
        self.exact = d >= _INT64_SAFE
        if self.exact:
            self.dtype = object
        else:
            self.dtype = next(t for t in (np.int16, np.int32, np.int64) if d <= np.iinfo(t).max)
        self.b = np.array(list(b), dtype=self.dtype)
        rng = np.random.default_rng(_HASH_SEED)
        self.weights = rng.integers(0, 2**63, size=self.m, dtype=np.uint64) | np.uint64(1)
        self.states = np.zeros((1, self.m), dtype=self.dtype)
        self.hashes = np.zeros(1, dtype=np.uint64)
        self.parents: list[np.ndarray] = []
        self.mults: list[np.ndarray] = []

    def _hash_of(self, idx: np.ndarray, vals: Sequence[int]) -> np.uint64:
        h = 0
        for q, v in zip(idx, vals):
            h = (h + int(self.weights[q]) * (int(v) % (1 << 64))) % (1 << 64)
        return np.uint64(h)

    def step(self, column: dict[int, int], functional):
        S = self.states
        k = S.shape[0]
        idx = np.array(sorted(column), dtype=np.int64)
        vals_list = [column[q] for q in sorted(column)]
        wide = object if self.exact else np.int64
        vals = np.array(vals_list, dtype=wide)
        if idx.size:
            room = (self.b[idx][None, :] - S[:, idx]).astype(wide)
            amax = np.min(room // vals[None, :], axis=1).astype(np.int64)
        else:
            amax = np.zeros(k, dtype=np.int64)

        if functional is None:
            counts = amax + 1
            parent = np.repeat(np.arange(k), counts)
            starts = np.cumsum(counts) - counts
            mult = np.arange(parent.size, dtype=np.int64) - np.repeat(starts, counts)
        else:
            y, t0 = functional
            yidx = np.array(sorted(y), dtype=np.int64)
            yvals = [y[q] for q in sorted(y)]
            bound = sum(abs(v) for v in yvals) * int(max(self.b, default=0))
            if self.exact or bound >= _INT64_SAFE:
                num = -(S[:, yidx].astype(object) @ np.array(yvals, dtype=object))
                num = np.array([int(v) for v in num], dtype=object)
                ok = np.array([v % t0 == 0 for v in num], dtype=bool)
                a = np.array([v // t0 if o else -1 for v, o in zip(num, ok)], dtype=object)
                keep = ok & np.array([0 <= av <= am for av, am in zip(a, amax)], dtype=bool)
                a = np.array([int(v) for v in a[keep]], dtype=np.int64)
            else:
                num = -(S[:, yidx].astype(np.int64) @ np.array(yvals, dtype=np.int64))
                ok = num % t0 == 0
                a = num // t0
                keep = ok & (a >= 0) & (a <= amax)
                a = a[keep]
            parent = np.flatnonzero(keep)
            mult = a

        new = S[parent]
        if idx.size:
            new[:, idx] += (mult.astype(wide)[:, None] * vals[None, :]).astype(self.dtype)
        hv = self._hash_of(idx, vals_list)
        hashes = self.hashes[parent] + mult.astype(np.uint64) * hv

        keep = self._dedupe(new, hashes)
        self.states = new[keep]
        self.hashes = hashes[keep]
        self.parents.append(parent[keep])
        self.mults.append(mult[keep])

    def _dedupe(self, new: np.ndarray, hashes: np.ndarray) -> np.ndarray:
        if new.shape[0] <= 1:
            return np.arange(new.shape[0])
        _, first, inverse = np.unique(hashes, return_index=True, return_inverse=True)
        if first.size == new.shape[0]:
            return np.arange(new.shape[0])
        if np.array_equal(new, new[first[inverse.ravel()]]):
            return np.sort(first)
        seen: dict[tuple, int] = {}
        for i, row in enumerate(map(tuple, new.tolist())):
            seen.setdefault(row, i)
        return np.array(sorted(seen.values()), dtype=np.int64)

    def find(self, target: Sequence[int]) -> int | None:
        hits = np.flatnonzero(np.all(self.states == np.array(list(target), dtype=self.dtype), axis=1))
        return int(hits[0]) if hits.size else None

    def multipliers(self, final_index: int) -> list[int]:
        out = [0] * len(self.parents)
        i = final_index
        for t in range(len(self.parents) - 1, -1, -1):
            out[t] = int(self.mults[t][i])
            i = int(self.parents[t][i])
        return out


def _finish(inst, order, table, method, stats, start) -> SolveReport:
    stats.millis = (time.perf_counter() - start) * 1000
    hit = table.find(inst.b)
    if hit is None:
        return SolveReport(False, None, method, stats, inst.d)
    x = [0] * inst.n
    for col, a in zip(order, table.multipliers(hit)):
        x[col] = a
    if not inst.is_solution(x):
        raise AssertionError("reconstructed certificate fails A x = b")
    return SolveReport(True, IpWitness(tuple(x)), method, stats, inst.d)


def solve_pathwidth_dp(inst: IpInstance) -> SolveReport:
    """Decide feasibility by dynamic programming along the instance's column ordering.

    The set kept after ``j`` columns never exceeds ``(d+1)^dim S(A', [j])``
    vectors, ``d = max b``; ``stats.cut_dims`` records those dimensions.
    """
    _check_nonnegative(inst)
    start = time.perf_counter()
    order, columns = _ordered_columns(inst)
    functionals, cut_dims = stage_functionals(columns, inst.b, inst.m)
    table = _StateTable(inst.b)
    stats = StageStats(cut_dims=cut_dims)
    for col, fn in zip(columns, functionals):
        table.step(col, fn)
        stats.sizes.append(table.states.shape[0])
    return _finish(inst, order, table, "pathwidth", stats, start)


def solve_box_dp(inst: IpInstance, max_states: int = BOX_STATE_LIMIT) -> SolveReport:
    """Reachability over the box ``0 <= v <= b``, one column at a time, no subspace filter."""
    _check_nonnegative(inst)
    start = time.perf_counter()
    order, columns = _ordered_columns(inst)
    table = _StateTable(inst.b)
    stats = StageStats()
    for col in columns:
        table.step(col, None)
        size = table.states.shape[0]
        if size > max_states:
            raise SizeError(f"box DP exceeded {max_states} reachable vectors")
        stats.sizes.append(size)
    return _finish(inst, order, table, "box", stats, start)


def _search_space(entry_cap: int, n: int) -> int:
    return (entry_cap + 1) ** n


def enumerate_solutions(inst: IpInstance, entry_cap: int):
    """Yield every ``x`` in ``{0..entry_cap}^n`` with ``A x = b``, in lexicographic order.

    With non-negative ``A`` a branch is cut as soon as a row sum passes its
    target, or a row that no later column touches misses it; no completion of
    such a branch can be a solution. Otherwise every point is visited.
    """
    n, m, b = inst.n, inst.m, inst.b
    if not inst.is_nonnegative():
        for x in itertools.product(range(entry_cap + 1), repeat=n):
            if inst.evaluate(x) == b:
                yield tuple(x)
        return
    cols = [inst.column(j) for j in range(n)]
    nzs = [[q for q in range(m) if col[q]] for col in cols]
    last = [-1] * m
    for t, nz in enumerate(nzs):
        for q in nz:
            last[q] = t
    closing: list[list[int]] = [[] for _ in range(n + 1)]
    for q in range(m):
        closing[last[q] + 1].append(q)
    x = [0] * n
    acc = [0] * m

    def rec(t):
        if any(acc[q] != b[q] for q in closing[t]):
            return
        if t == n:
            yield tuple(x)
            return
        col, nz = cols[t], nzs[t]
        added = 0
        for a in range(entry_cap + 1):
            if a:
                for q in nz:
                    acc[q] += col[q]
                added = a
                if any(acc[q] > b[q] for q in nz):
                    break
            x[t] = a
            yield from rec(t + 1)
        for q in nz:
            acc[q] -= added * col[q]
        x[t] = 0

    yield from rec(0)


def solve_bruteforce(inst: IpInstance, entry_cap: int | None = None) -> SolveReport:
    """Exhaustive search over ``{0..entry_cap}^n``; ``entry_cap`` defaults to ``max b``."""
    if entry_cap is None:
        entry_cap = inst.d
    if entry_cap < 0:
        raise ContractError("entry cap must be non-negative")
    space = _search_space(entry_cap, inst.n)
    if space > BRUTEFORCE_LIMIT:
        raise SizeError(f"search space (cap+1)^n = {space} exceeds {BRUTEFORCE_LIMIT}")
    start = time.perf_counter()
    x = next(enumerate_solutions(inst, entry_cap), None)
    stats = StageStats(millis=(time.perf_counter() - start) * 1000)
    if x is None:
        return SolveReport(False, None, "brute", stats, inst.d)
    return SolveReport(True, IpWitness(x), "brute", stats, inst.d)


def stage_bound_check(report: SolveReport, inst: IpInstance) -> bool:
    """``|B([j])| <= (d+1)^dim S(A', [j])`` at every recorded stage."""
    if not report.stats.cut_dims:
        raise ContractError("report carries no cut dimensions; produce it with solve_pathwidth_dp")
    base = inst.d + 1
    return all(size <= base**dim for size, dim in zip(report.stats.sizes, report.stats.cut_dims))
