"""Exact rational linear algebra.

Everything here works over ``Fraction`` (or plain ``int``) so dimensions and
membership answers are exact. Vectors are tuples; subspaces are stored as a
reduced row-echelon basis, which makes equal subspaces compare equal.

Indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from pwip.errors import ContractError

Vector = tuple[Fraction, ...]


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ContractError(f"expected {self.rows} rows, got {len(self.entries)}")
        for r in self.entries:
            if len(r) != self.cols:
                raise ContractError(f"row of length {len(r)} in a matrix with {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> RationalMatrix:
        entries = tuple(tuple(_as_fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self, idx: Iterable[int] | None = None) -> list[Vector]:
        if idx is None:
            idx = range(self.cols)
        return [self.column(j) for j in idx]

    def permute_columns(self, perm: Sequence[int]) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, tuple(tuple(r[j] for j in perm) for r in self.entries))

    def permute_rows(self, perm: Sequence[int]) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, tuple(self.entries[i] for i in perm))

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows, tuple(self.columns()))


def rref(vectors: Iterable[Sequence], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form of the matrix whose rows are ``vectors``.

    Returns the non-zero rows and their pivot positions.
    """
    rows = [[_as_fraction(x) for x in v] for v in vectors]
    for r in rows:
        if len(r) != width:
            raise ContractError(f"vector of length {len(r)} in a space of dimension {width}")
    pivots: list[int] = []
    top = 0
    for col in range(width):
        piv = next((i for i in range(top, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        p = rows[top][col]
        if p != 1:
            rows[top] = [x / p for x in rows[top]]
        prow = rows[top]
        for i in range(len(rows)):
            if i != top and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def rank(M: RationalMatrix) -> int:
    """Rank of ``M`` over the rationals."""
    return len(rref(M.entries, M.cols)[1])


def kernel(M: RationalMatrix) -> list[Vector]:
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    rows, pivots = rref(M.entries, M.cols)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * M.cols
        x[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            x[p] = -r[f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held as a canonical RREF basis.

    The zero subspace is an empty basis with the ambient dimension kept.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def spanned_by(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows, _ = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(v) if x != 0) for v in self.basis]


def span_of_columns(M: RationalMatrix, cols: Iterable[int]) -> Subspace:
    cols = sorted(set(cols))
    for j in cols:
        if not 0 <= j < M.cols:
            raise ContractError(f"column {j} out of range for {M.cols} columns")
    return Subspace.spanned_by(M.columns(cols), M.rows)


def _check_same_ambient(U: Subspace, W: Subspace):
    if U.ambient_dim != W.ambient_dim:
        raise ContractError(f"ambient dimensions differ: {U.ambient_dim} vs {W.ambient_dim}")


def sum_spaces(U: Subspace, W: Subspace) -> Subspace:
    _check_same_ambient(U, W)
    return Subspace.spanned_by(U.basis + W.basis, U.ambient_dim)


def intersect(U: Subspace, W: Subspace) -> Subspace:
    """``U ∩ W`` from the kernel of ``[U | -W]``.

    A kernel vector ``(alpha, beta)`` gives ``sum alpha_i u_i = sum beta_k w_k``,
    a common element; the images of a kernel basis span the intersection.
    """
    _check_same_ambient(U, W)
    m = U.ambient_dim
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(m)
    joint = RationalMatrix(
        m,
        U.dim + W.dim,
        tuple(tuple(u[q] for u in U.basis) + tuple(-w[q] for w in W.basis) for q in range(m)),
    )
    images = []
    for z in kernel(joint):
        alpha = z[: U.dim]
        images.append(tuple(sum((a * u[q] for a, u in zip(alpha, U.basis)), Fraction(0)) for q in range(m)))
    return Subspace.spanned_by(images, m)


def contains(U: Subspace, v: Sequence) -> bool:
    """Membership test: reduce ``v`` against the RREF basis and look for a remainder."""
    if len(v) != U.ambient_dim:
        raise ContractError(f"vector of length {len(v)} tested against a subspace of Q^{U.ambient_dim}")
    r = [_as_fraction(x) for x in v]
    for row, p in zip(U.basis, U.pivots()):
        f = r[p]
        if f != 0:
            r = [a - f * b for a, b in zip(r, row)]
    return all(x == 0 for x in r)


SparseVec = dict[int, int]


def sparse(v: Sequence[int]) -> SparseVec:
    return {i: int(x) for i, x in enumerate(v) if x != 0}


def sparse_dot(y: SparseVec, v: SparseVec) -> int:
    if len(y) > len(v):
        y, v = v, y
    return sum(a * v[i] for i, a in y.items() if i in v)


class IncrementalSpan:
    """A growing span of integer vectors, tracked through its annihilator.

    The object keeps a basis of ``{y : y . u = 0 for every added u}`` as
    primitive sparse integer vectors. Adding ``v`` costs work proportional to
    the annihilator vectors whose support meets ``supp(v)``, which stays small
    for the banded matrices produced by the reductions.

    ``add`` returns the annihilator vector ``y0`` it retired together with
    ``t0 = y0 . v``. That pair is a functional vanishing on the span *before*
    the addition and non-zero on ``v``; for any ``s`` in the enlarged span,
    ``s`` lies in the old span iff ``y0 . s == 0``.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._basis: dict[int, SparseVec] = {q: {q: 1} for q in range(ambient_dim)}
        self._touch: list[set[int]] = [{q} for q in range(ambient_dim)]
        self._next_id = ambient_dim

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self._basis)

    def _check(self, v: SparseVec):
        for q in v:
            if not 0 <= q < self.ambient_dim:
                raise ContractError(f"coordinate {q} outside Q^{self.ambient_dim}")

    def _dots(self, v: SparseVec) -> dict[int, int]:
        ids: set[int] = set()
        for q in v:
            ids |= self._touch[q]
        out = {}
        for k in ids:
            t = sparse_dot(self._basis[k], v)
            if t:
                out[k] = t
        return out

    def contains(self, v: SparseVec) -> bool:
        self._check(v)
        return not self._dots(v)

    def annihilator(self) -> list[SparseVec]:
        return [dict(y) for _, y in sorted(self._basis.items())]

    def add(self, v: SparseVec) -> tuple[SparseVec, int] | None:
        self._check(v)
        dots = self._dots(v)
        if not dots:
            return None
        k0 = min(dots, key=lambda k: (len(self._basis[k]), k))
        y0, t0 = self._basis.pop(k0), dots.pop(k0)
        for q in y0:
            self._touch[q].discard(k0)
        for k, t in dots.items():
            old = self._basis[k]
            new: SparseVec = {}
            for q in old.keys() | y0.keys():
                val = t0 * old.get(q, 0) - t * y0.get(q, 0)
                if val:
                    new[q] = val
            g = gcd(*new.values())
            if g > 1:
                new = {q: val // g for q, val in new.items()}
            for q in old.keys() - new.keys():
                self._touch[q].discard(k)
            for q in new.keys() - old.keys():
                self._touch[q].add(k)
            self._basis[k] = new
        return y0, t0
