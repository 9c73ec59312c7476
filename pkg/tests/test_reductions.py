import itertools
import random

import pytest

from pwip.cli import instance_width
from pwip.cnf import CnfFormula, brute_force_sat
from pwip.corpus import random_3cnf, random_cnf
from pwip.errors import ContractError, WitnessError
from pwip.exactla import RationalMatrix
from pwip.matroid import cut_profile
from pwip.reductions import (
    clause_block,
    pathwidth_dims,
    reduce_binary,
    reduce_eth,
    reduce_pathwidth,
    witness_eth,
    witness_pathwidth,
)

# Clause x1 or not x2 or x4, n = 4, c = 2, as printed for a middle clause.
GOLDEN_MIDDLE = [
    [0, 0, 1, 1, 2, 2, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0],
    [0] * 16,
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 2, 2, 3, 3],
    [0] * 16,
    [0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
    [3, 3, 2, 2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 3, 3, 2, 2, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
]
GOLDEN_LAST = GOLDEN_MIDDLE[:5] + [GOLDEN_MIDDLE[6], GOLDEN_MIDDLE[8]]
CLAUSE = (1, -2, 4)
REPEATED_CLAUSE = CnfFormula(4, (CLAUSE, CLAUSE, CLAUSE))


def test_golden_blocks():
    inst = reduce_pathwidth(REPEATED_CLAUSE, 2)
    assert clause_block(inst, 1) == GOLDEN_MIDDLE
    assert clause_block(inst, 2) == GOLDEN_LAST
    assert clause_block(inst, 0) == GOLDEN_MIDDLE[4:]


def test_off_block_entries_are_zero():
    inst = reduce_pathwidth(REPEATED_CLAUSE, 2)
    band = 5
    for r in range(3):
        top = 0 if r == 0 else (r - 1) * band + 1
        height = len(clause_block(inst, r))
        for q in range(inst.m):
            for j in range(r * 16, (r + 1) * 16):
                if not top <= q < top + height:
                    assert inst.A[q][j] == 0


def test_dims_and_targets():
    # (m-1)(2c+1) + (c+1) rows and m c 2^(ell+1) columns for m=3, c=2, ell=2
    assert pathwidth_dims(3, 4, 2) == (2 * 5 + 3, 3 * 2 * 8) == (13, 48)
    inst = reduce_pathwidth(REPEATED_CLAUSE, 2)
    assert (inst.m, inst.n) == (13, 48)
    assert inst.d == 3
    assert inst.ordering.permutation == tuple(range(48))
    assert inst.meta == {"construction": "pathwidth", "c": 2, "ell": 2, "L": 4, "vars": 4, "clauses": 3}


def test_single_clause_rejected():
    with pytest.raises(ContractError):
        reduce_pathwidth(CnfFormula(2, ((1, 2),)), 2)
    with pytest.raises(ContractError):
        reduce_pathwidth(REPEATED_CLAUSE, 1)


def test_witness_structure():
    inst = reduce_pathwidth(REPEATED_CLAUSE, 2)
    w = witness_pathwidth(inst, (True, False, False, False))
    assert inst.is_solution(w.x)
    # one selected column per (clause, block) group
    for g in range(3 * 2):
        assert sum(w.x[g * 8 : (g + 1) * 8]) == 1
    with pytest.raises(WitnessError):
        witness_pathwidth(inst, (False, True, False, False))
    with pytest.raises(ContractError):
        witness_pathwidth(reduce_eth(CnfFormula(3, ((1, 2, 3),))), (True,) * 3)


def test_witness_for_every_satisfying_assignment():
    rng = random.Random(3)
    for _ in range(30):
        phi = random_cnf(rng, max_vars=6, max_clauses=6)
        for c in (2, 3):
            inst = reduce_pathwidth(phi, c)
            for bits in itertools.product([False, True], repeat=phi.num_vars):
                if phi.satisfied_by(bits):
                    assert inst.is_solution(witness_pathwidth(inst, bits).x)
                else:
                    with pytest.raises(WitnessError):
                        witness_pathwidth(inst, bits)


def test_width_bound_on_small_instances():
    rng = random.Random(11)
    for _ in range(20):
        phi = random_cnf(rng, max_vars=8, max_clauses=6)
        for c in (2, 3):
            inst = reduce_pathwidth(phi, c)
            assert instance_width(inst)[0] <= c + 4


def test_binary_split():
    base = reduce_pathwidth(REPEATED_CLAUSE, 2)
    inst = reduce_binary(REPEATED_CLAUSE, 2)
    # succession row (3,3,2,2,1,1,0,0): low bits then high bits
    assert inst.A[1][:8] == (1, 1, 0, 0, 1, 1, 0, 0)
    assert inst.A[2][:8] == (1, 1, 1, 1, 0, 0, 0, 0)
    split = sum(1 for row in base.A if max(row) > 1)
    assert inst.m == base.m + split * (2 - 1)
    assert set(inst.b) == {1}
    assert max(max(row) for row in inst.A) == 1
    assert inst.n == base.n
    w = witness_pathwidth(base, (True, True, True, True))
    assert inst.is_solution(w.x)


def test_binary_width_bound():
    rng = random.Random(12)
    for _ in range(20):
        phi = random_cnf(rng, max_vars=8, max_clauses=6)
        for c in (2, 3):
            inst = reduce_binary(phi, c)
            ell = -(-phi.num_vars // c)
            assert instance_width(inst)[0] <= (c + 1) * ell + 3


def test_eth_dims_and_targets():
    phi = CnfFormula(4, ((1, 2, 3), (-1, -2, 4), (2, -3, -4)))
    inst = reduce_eth(phi)
    assert (inst.m, inst.n) == (10, 14)
    assert reduce_eth(CnfFormula(2, ((1, -2, 2),))).b == (3, 1, 1, 2)
    for i in range(4):
        assert inst.A[3 + i][2 * i] == inst.A[3 + i][2 * i + 1] == 1
    with pytest.raises(ContractError):
        reduce_eth(CnfFormula(2, ((1, 2),)))


def test_eth_slack_pairs():
    phi = CnfFormula(3, ((1, 2, 3), (1, -2, -3)))
    inst = reduce_eth(phi)
    x = witness_eth(inst, (True, True, True)).x
    assert x[6:8] == (0, 2)  # all three literals true
    assert x[8:10] == (2, 0)  # exactly one true literal
    with pytest.raises(WitnessError):
        witness_eth(inst, (False, False, False))


def test_eth_witness_on_random_formulas():
    rng = random.Random(5)
    for _ in range(40):
        phi = random_3cnf(rng, max_vars=10, max_clauses=8)
        inst = reduce_eth(phi)
        sol = brute_force_sat(phi)
        if sol is not None:
            assert inst.is_solution(witness_eth(inst, sol).x)


def test_sparse_width_matches_exact_width():
    rng = random.Random(8)
    for _ in range(5):
        phi = random_cnf(rng, max_vars=6, max_clauses=4)
        for inst in (reduce_pathwidth(phi, 2), reduce_binary(phi, 3)):
            M = RationalMatrix.from_rows(inst.A, inst.n)
            assert instance_width(inst)[1] == cut_profile(M, inst.ordering)
