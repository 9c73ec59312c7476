import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwip.errors import ContractError, SizeError
from pwip.exactla import RationalMatrix
from pwip.matroid import (
    PathOrdering,
    connectivity,
    cut_dimension,
    cut_profile,
    optimal_ordering_bruteforce,
    ordering_width,
)

BIDIAGONAL = RationalMatrix.from_rows(
    [
        [1, 1, 0, 0, 0],
        [0, 1, 1, 0, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 0, 1, 1],
    ]
)
I3 = RationalMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(2, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def width_with_singletons(M, order):
    """The width as literally defined: prefix cuts plus singleton leaf cuts."""
    prefix = [cut_dimension(M, order[:j]) + 1 for j in range(1, M.cols)]
    leaves = [connectivity(M, {i}) for i in range(M.cols)]
    return max(prefix + leaves)


def test_permutation_is_validated():
    with pytest.raises(ContractError):
        PathOrdering((0, 0, 1))
    assert PathOrdering.natural(3).reversed().permutation == (2, 1, 0)


def test_connectivity_examples():
    assert connectivity(BIDIAGONAL, set()) == 1
    assert connectivity(BIDIAGONAL, range(5)) == 1
    assert connectivity(BIDIAGONAL, {0, 1}) == 2


def test_cut_dimension_examples():
    assert cut_dimension(I3, {0}) == 0
    assert cut_dimension(BIDIAGONAL, {0, 1}) == 1
    dup = RationalMatrix.from_rows([[1, 1, 0], [2, 2, 1]])
    assert cut_dimension(dup, {0}) >= 1
    with pytest.raises(ContractError):
        cut_dimension(I3, set())
    with pytest.raises(ContractError):
        cut_dimension(I3, {0, 1, 2})


def test_width_examples():
    assert ordering_width(I3) == 1
    assert ordering_width(BIDIAGONAL) == 2
    assert cut_profile(BIDIAGONAL) == [1, 1, 1, 1]
    assert ordering_width(RationalMatrix.from_rows([[1]])) == 1


def test_optimal_examples():
    assert optimal_ordering_bruteforce(I3)[1] == 1
    twins = RationalMatrix.from_rows([[1, 1], [2, 2]])
    assert optimal_ordering_bruteforce(twins)[1] == 2
    assert ordering_width(twins, PathOrdering((1, 0))) == 2
    order, w = optimal_ordering_bruteforce(BIDIAGONAL)
    assert w == 2 and ordering_width(BIDIAGONAL, order) == 2
    best = min(ordering_width(BIDIAGONAL, PathOrdering(p)) for p in itertools.permutations(range(5)))
    assert best == 2


def test_optimal_size_limit():
    with pytest.raises(SizeError):
        optimal_ordering_bruteforce(RationalMatrix.zeros(1, 10))


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_symmetry_and_cut_identity(rows, data):
    M = RationalMatrix.from_rows(rows)
    X = data.draw(st.sets(st.integers(0, M.cols - 1)))
    rest = set(range(M.cols)) - X
    assert connectivity(M, X) == connectivity(M, rest)
    if X and rest:
        assert cut_dimension(M, X) == connectivity(M, X) - 1


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_width_properties(rows, data):
    M = RationalMatrix.from_rows(rows)
    order = PathOrdering(tuple(data.draw(st.permutations(range(M.cols)))))
    w = ordering_width(M, order)
    assert w == width_with_singletons(M, order.permutation)
    assert w == ordering_width(M, order.reversed())
    assert optimal_ordering_bruteforce(M)[1] <= w


@settings(max_examples=25, deadline=None)
@given(matrices)
def test_optimal_matches_factorial_search(rows):
    M = RationalMatrix.from_rows(rows)
    order, w = optimal_ordering_bruteforce(M)
    best = min(ordering_width(M, PathOrdering(p)) for p in itertools.permutations(range(M.cols)))
    assert w == best == ordering_width(M, order)
