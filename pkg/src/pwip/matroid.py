"""Connectivity and path-ordering width of column matroids.

The width of a column ordering is ``1 + max dim(span(prefix) ∩ span(suffix))``
over the ``n - 1`` prefix cuts. Leaf (singleton) cuts of the caterpillar never
raise it: if every prefix cut has dimension 0 the matroid is a direct sum of
loops and coloops, so each singleton has connectivity 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from pwip.errors import ContractError, SizeError
from pwip.exactla import IncrementalSpan, RationalMatrix, intersect, rank, rref, span_of_columns

MAX_BRUTEFORCE_COLUMNS = 9


@dataclass(frozen=True)
class PathOrdering:
    """A column permutation; position ``t`` holds the column processed ``t``-th."""

    permutation: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(self.permutation)
        object.__setattr__(self, "permutation", perm)
        if sorted(perm) != list(range(len(perm))):
            raise ContractError(f"not a permutation of 0..{len(perm) - 1}: {perm}")

    @classmethod
    def natural(cls, n: int) -> PathOrdering:
        return cls(tuple(range(n)))

    def reversed(self) -> PathOrdering:
        return PathOrdering(self.permutation[::-1])

    def __len__(self):
        return len(self.permutation)

    def __iter__(self):
        return iter(self.permutation)

    def __getitem__(self, t):
        return self.permutation[t]


def _subset(M: RationalMatrix, X: Iterable[int]) -> set[int]:
    X = set(X)
    bad = [j for j in X if not 0 <= j < M.cols]
    if bad:
        raise ContractError(f"columns {bad} out of range for {M.cols} columns")
    return X


def _rank_of(M: RationalMatrix, cols: Iterable[int]) -> int:
    return len(rref(M.columns(sorted(cols)), M.rows)[1])


def connectivity(M: RationalMatrix, X: Iterable[int]) -> int:
    """``r(X) + r(E - X) - r(E) + 1`` for the column matroid of ``M``."""
    X = _subset(M, X)
    rest = set(range(M.cols)) - X
    return _rank_of(M, X) + _rank_of(M, rest) - rank(M) + 1


def cut_dimension(M: RationalMatrix, X: Iterable[int]) -> int:
    """``dim(span(M|X) ∩ span(M|E - X))`` for a proper non-empty ``X``."""
    X = _subset(M, X)
    if not X or len(X) == M.cols:
        raise ContractError("cut_dimension needs a proper non-empty column subset")
    rest = set(range(M.cols)) - X
    return intersect(span_of_columns(M, X), span_of_columns(M, rest)).dim


def _integer_column(col: Sequence[Fraction]) -> dict[int, int]:
    den = lcm(*(Fraction(x).denominator for x in col)) if col else 1
    return {q: int(Fraction(x) * den) for q, x in enumerate(col) if x != 0}


def prefix_ranks(columns: Sequence[dict[int, int]], ambient_dim: int) -> list[int]:
    """``ranks[j]`` = rank of the first ``j`` columns, for ``j = 0..n``."""
    span = IncrementalSpan(ambient_dim)
    out = [0]
    for v in columns:
        span.add(v)
        out.append(span.dim)
    return out


def cut_profile(M: RationalMatrix, ordering: PathOrdering | None = None) -> list[int]:
    """Dimensions of the ``n - 1`` prefix cuts under ``ordering``.

    Prefix ranks are accumulated left to right and suffix ranks right to left,
    so the whole profile costs two incremental passes.
    """
    n = M.cols
    if ordering is None:
        ordering = PathOrdering.natural(n)
    if len(ordering) != n:
        raise ContractError(f"ordering of length {len(ordering)} for {n} columns")
    return sparse_cut_profile([_integer_column(M.column(j)) for j in ordering], M.rows)


def sparse_cut_profile(columns: Sequence[dict[int, int]], ambient_dim: int) -> list[int]:
    """``cut_profile`` for integer columns given sparsely, already in order."""
    n = len(columns)
    pre = prefix_ranks(columns, ambient_dim)
    suf = prefix_ranks(columns[::-1], ambient_dim)[::-1]
    total = pre[n]
    return [pre[j] + suf[j] - total for j in range(1, n)]


def ordering_width(M: RationalMatrix, ordering: PathOrdering | None = None) -> int:
    if M.cols < 2:
        return 1
    return 1 + max(cut_profile(M, ordering))


def _subset_cut_dims(M: RationalMatrix) -> list[int]:
    n = M.cols
    cols = M.columns()
    ranks = [len(rref([cols[j] for j in range(n) if mask >> j & 1], M.rows)[1]) for mask in range(1 << n)]
    full = (1 << n) - 1
    return [ranks[mask] + ranks[full ^ mask] - ranks[full] for mask in range(1 << n)]


def optimal_ordering_bruteforce(
    M: RationalMatrix, max_columns: int = MAX_BRUTEFORCE_COLUMNS
) -> tuple[PathOrdering, int]:
    """A minimum-width ordering by exhaustive search.

    Orderings are searched through their prefix sets: the best width of an
    ordering whose first ``|S|`` columns are ``S`` only depends on ``S``, so the
    ``n!`` orderings collapse to ``2^n`` states. Ties go to the smallest column.
    """
    n = M.cols
    if n > max_columns:
        raise SizeError(f"exhaustive ordering search is limited to {max_columns} columns, got {n}")
    if n < 2:
        return PathOrdering.natural(n), 1
    cut = _subset_cut_dims(M)
    full = (1 << n) - 1
    best = [0] * (1 << n)
    last = [-1] * (1 << n)
    for mask in range(1, full + 1):
        options = [(best[mask ^ (1 << x)], x) for x in range(n) if mask >> x & 1]
        val, x = min(options)
        here = cut[mask] if mask != full else 0
        best[mask] = max(val, here)
        last[mask] = x
    order = []
    mask = full
    while mask:
        x = last[mask]
        order.append(x)
        mask ^= 1 << x
    return PathOrdering(tuple(reversed(order))), 1 + best[full]
