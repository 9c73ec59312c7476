"""Seeded instance generators: random CNF, handcrafted edge formulas, random
3-CNF, random non-negative IPs and benchmark families.

All randomness goes through ``random.Random(seed)`` so a seed fixes the corpus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from pwip.cnf import CnfFormula
from pwip.errors import ContractError
from pwip.reductions import IpInstance, reduce_pathwidth

DEFAULT_SEED = 20240601


def _clause(rng: random.Random, n: int, size: int) -> tuple[int, ...]:
    vars_ = rng.sample(range(1, n + 1), size)
    return tuple(v if rng.random() < 0.5 else -v for v in vars_)


def random_cnf(rng: random.Random, max_vars: int = 10, min_clauses: int = 2, max_clauses: int = 15) -> CnfFormula:
    """Clause sizes are uniform in 1..3 over distinct variables."""
    n = rng.randint(1, max_vars)
    m = rng.randint(min_clauses, max_clauses)
    return CnfFormula(n, tuple(_clause(rng, n, rng.randint(1, min(3, n))) for _ in range(m)))


def random_cnf_corpus(seed: int, count: int) -> list[tuple[str, CnfFormula]]:
    rng = random.Random(seed)
    return [(f"rand{k:03d}", random_cnf(rng)) for k in range(count)]


def random_3cnf(rng: random.Random, min_vars: int = 3, max_vars: int = 8, max_clauses: int = 6) -> CnfFormula:
    n = rng.randint(min_vars, max_vars)
    m = rng.randint(1, max_clauses)
    return CnfFormula(n, tuple(_clause(rng, n, 3) for _ in range(m)))


def random_3cnf_corpus(seed: int, count: int) -> list[tuple[str, CnfFormula]]:
    rng = random.Random(seed)
    return [(f"3cnf{k:03d}", random_3cnf(rng)) for k in range(count)]


def _pigeonhole(pigeons: int, holes: int) -> CnfFormula:
    def p(i, h):
        return i * holes + h + 1

    clauses = [tuple(p(i, h) for h in range(holes)) for i in range(pigeons)]
    for h in range(holes):
        for i in range(pigeons):
            for k in range(i + 1, pigeons):
                clauses.append((-p(i, h), -p(k, h)))
    return CnfFormula(pigeons * holes, tuple(clauses))


def _all_sign_patterns(n: int, drop: int | None = None) -> CnfFormula:
    clauses = []
    for mask in range(1 << n):
        if mask != drop:
            clauses.append(tuple(v + 1 if mask >> v & 1 else -(v + 1) for v in range(n)))
    return CnfFormula(n, tuple(clauses))


def handcrafted_formulas() -> list[tuple[str, CnfFormula]]:
    """Edge cases for the reductions: contradictions, padding, unused and
    duplicated variables, tautologies, long implication chains."""
    chain = [(-v, v + 1) for v in range(1, 10)]
    out = [
        ("unit_contradiction", CnfFormula(1, ((1,), (-1,)))),
        ("unit_pair_sat", CnfFormula(1, ((1,), (1,)))),
        ("two_units_sat", CnfFormula(2, ((1,), (-2,)))),
        ("tautology_only", CnfFormula(2, ((1, -1), (2, -2)))),
        ("repeated_literal", CnfFormula(3, ((1, 1, 1), (-1, 2, 2), (-2,)))),
        ("duplicate_clauses", CnfFormula(3, ((1, 2, 3),) * 4)),
        ("unused_variables", CnfFormula(10, ((1,), (1, -1)))),
        ("last_variable_only", CnfFormula(10, ((10,), (-10, 10)))),
        ("odd_vars_padding", CnfFormula(7, ((1, 4, 7), (-7,), (-1, -4), (2,)))),
        ("five_vars_padding", CnfFormula(5, ((5,), (-5, 1), (-1, 3), (-3, -2)))),
        ("all_eight_3clauses_unsat", _all_sign_patterns(3)),
        ("seven_of_eight_3clauses", _all_sign_patterns(3, drop=5)),
        ("all_four_2clauses_unsat", _all_sign_patterns(2)),
        ("pigeonhole_3_2_unsat", _pigeonhole(3, 2)),
        ("pigeonhole_2_2_sat", _pigeonhole(2, 2)),
        ("implication_chain_unsat", CnfFormula(10, tuple(chain) + ((1,), (-10,)))),
        ("implication_chain_sat", CnfFormula(10, tuple(chain) + ((1,), (10,)))),
        ("xor_triangle_unsat", CnfFormula(3, ((1, 2), (-1, -2), (2, 3), (-2, -3), (1, 3), (-1, -3)))),
        ("xor_path_sat", CnfFormula(4, ((1, 2), (-1, -2), (2, 3), (-2, -3), (3, 4), (-3, -4)))),
        ("fifteen_units_sat", CnfFormula(10, tuple((v if v % 2 else -v,) for v in range(1, 11)) + ((1, 2, 3),) * 5)),
        ("cross_block_clauses", CnfFormula(6, ((1, 4), (2, 5), (3, 6), (-1, -2, -3), (-4, -5, -6)))),
        ("all_negative", CnfFormula(4, ((-1, -2, -3), (-2, -3, -4), (-1, -4)))),
        ("single_var_many_clauses", CnfFormula(1, ((1,),) * 15)),
    ]
    return out


def random_ip(rng: random.Random, max_rows: int = 4, max_cols: int = 8, max_entry: int = 3, max_b: int = 6) -> IpInstance:
    """Half of the targets are planted as ``A x`` for a random small ``x`` (when that
    stays within ``max_b``), the rest are uniform, so both verdicts are common."""
    m = rng.randint(1, max_rows)
    n = rng.randint(1, max_cols)
    A = [[rng.randint(0, max_entry) if rng.random() < 0.6 else 0 for _ in range(n)] for _ in range(m)]
    b = None
    if rng.random() < 0.5:
        x = [rng.randint(0, 2) if rng.random() < 0.4 else 0 for _ in range(n)]
        planted = [sum(a * xi for a, xi in zip(row, x)) for row in A]
        if max(planted) <= max_b:
            b = planted
    if b is None:
        b = [rng.randint(0, max_b) for _ in range(m)]
    return IpInstance(tuple(map(tuple, A)), tuple(b))


def random_ip_corpus(seed: int, count: int) -> list[tuple[str, IpInstance]]:
    rng = random.Random(seed)
    return [(f"ip{k:04d}", random_ip(rng)) for k in range(count)]


def band_instance(rng: random.Random, rows: int, band: int, d: int, max_entry: int = 2) -> IpInstance:
    """Columns supported on ``band`` consecutive rows, left to right, with
    targets from a random combination clamped to ``d``."""
    cols = []
    for top in range(rows - band + 1):
        for _ in range(2):
            col = [0] * rows
            for q in range(top, top + band):
                col[q] = rng.randint(1, max_entry)
            cols.append(col)
    A = [[col[q] for col in cols] for q in range(rows)]
    x = [rng.randint(0, d) for _ in cols]
    b = [sum(a * xi for a, xi in zip(row, x)) for row in A]
    # Clamped targets need not stay reachable; the benchmark measures set sizes.
    b = [min(v, d) for v in b]
    return IpInstance(tuple(map(tuple, A)), tuple(b), tuple(range(len(cols))), {"family": "band", "band": band})


def repeat_instance(rows: int, copies: int, d: int) -> IpInstance:
    """``[I | I | ...]`` with target ``(d, ..., d)``. After the first copy every
    vector of the box ``{0..d}^rows`` is a partial sum, so the DP keeps exactly
    ``(d+1)^rows`` states; the natural ordering has width ``rows + 1``."""
    A = tuple(tuple(int(j % rows == q) for j in range(rows * copies)) for q in range(rows))
    return IpInstance(A, (d,) * rows, tuple(range(rows * copies)), {"family": "repeat"})


@dataclass
class BenchItem:
    id: str
    instance: IpInstance


def _as_list(v):
    return v if isinstance(v, list) else [v]


def bench_corpus(spec: dict) -> list[BenchItem]:
    """Expand a corpus spec into instances.

    ``spec = {"seed": int, "families": [...]}``; each family is one of

    * ``{"kind": "band", "rows": r, "band": w, "d": [d1, d2, ...], "count": k}``
    * ``{"kind": "repeat", "rows": [k1, k2, ...], "copies": 2, "d": [d1, d2, ...]}``
    * ``{"kind": "pathwidth", "c": c, "vars": n, "clauses": m, "count": k}``
    * ``{"kind": "random_ip", "count": k}``

    ``band``, ``rows`` (for ``repeat``) and ``d`` may be lists; every
    combination is generated.
    """
    seed = int(spec.get("seed", DEFAULT_SEED))
    items: list[BenchItem] = []
    for f_idx, fam in enumerate(spec.get("families", [])):
        rng = random.Random(f"{seed}:{f_idx}")
        kind = fam.get("kind")
        count = int(fam.get("count", 1))
        if kind == "band":
            bands = fam.get("band", 2)
            ds = fam.get("d", 3)
            for w in _as_list(bands):
                for d in _as_list(ds):
                    for k in range(count):
                        inst = band_instance(rng, int(fam.get("rows", 6)), int(w), int(d))
                        items.append(BenchItem(f"f{f_idx}-band-w{w}-d{d}-{k}", inst))
        elif kind == "repeat":
            for r in _as_list(fam.get("rows", 2)):
                for d in _as_list(fam.get("d", 2)):
                    inst = repeat_instance(int(r), int(fam.get("copies", 2)), int(d))
                    items.append(BenchItem(f"f{f_idx}-repeat-r{r}-d{d}", inst))
        elif kind == "pathwidth":
            c = int(fam["c"])
            for k in range(count):
                n, m = int(fam.get("vars", 4)), int(fam.get("clauses", 3))
                phi = CnfFormula(n, tuple(_clause(rng, n, rng.randint(1, min(3, n))) for _ in range(m)))
                items.append(BenchItem(f"f{f_idx}-pw-c{c}-{k}", reduce_pathwidth(phi, c)))
        elif kind == "random_ip":
            for k in range(count):
                items.append(BenchItem(f"f{f_idx}-ip-{k}", random_ip(rng)))
        else:
            raise ContractError(f"unknown corpus family kind {kind!r}")
    return sorted(items, key=lambda it: it.id)
