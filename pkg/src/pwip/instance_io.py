"""The ``ip 1`` text format for IP instances.

::

    ip 1
    rows <m> cols <n>
    b <b_1> ... <b_m>
    row <a_1> ... <a_n>        (m times)
    order <p_1> ... <p_n>      (optional, 1-based permutation)
    meta <key>=<value> ...     (optional)

Blank lines and lines starting with ``#`` are ignored. Entries are unbounded
decimal integers.
"""

from __future__ import annotations

from pwip.errors import ContractError, ParseError
from pwip.matroid import PathOrdering
from pwip.reductions import IpInstance

HEADER = "ip 1"


def _fmt(values) -> str:
    return " ".join(str(v) for v in values)


def write_instance(inst: IpInstance) -> str:
    lines = [HEADER, f"rows {inst.m} cols {inst.n}"]
    lines.append(("b " + _fmt(inst.b)).rstrip())
    lines += [("row " + _fmt(row)).rstrip() for row in inst.A]
    if inst.ordering is not None:
        lines.append(("order " + _fmt(p + 1 for p in inst.ordering)).rstrip())
    if inst.meta:
        lines.append("meta " + " ".join(f"{k}={v}" for k, v in inst.meta.items()))
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer entry in {' '.join(tokens)!r}", lineno) from None


def _meta_value(v: str) -> int | str:
    try:
        return int(v)
    except ValueError:
        return v


def parse_instance(text: str | bytes) -> IpInstance:
    if isinstance(text, bytes):
        text = text.decode()
    lines = [
        (k, raw.split())
        for k, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines or lines[0][1] != HEADER.split():
        raise ParseError(f"expected header {HEADER!r}", lines[0][0] if lines else None)
    if len(lines) < 3:
        raise ParseError("truncated instance file", lines[-1][0])

    lineno, tok = lines[1]
    if len(tok) != 4 or tok[0] != "rows" or tok[2] != "cols":
        raise ParseError("expected 'rows <m> cols <n>'", lineno)
    m, n = _ints([tok[1], tok[3]], lineno)
    if m < 0 or n < 0:
        raise ParseError("negative dimension", lineno)

    lineno, tok = lines[2]
    if tok[0] != "b":
        raise ParseError("expected the 'b' line", lineno)
    b = _ints(tok[1:], lineno)
    if len(b) != m:
        raise ParseError(f"b has {len(b)} entries, expected {m}", lineno)

    A = []
    rest = lines[3:]
    for k in range(m):
        if k >= len(rest) or rest[k][1][0] != "row":
            raise ParseError(f"expected {m} 'row' lines, found {k}", rest[k][0] if k < len(rest) else lines[-1][0])
        lineno, tok = rest[k]
        row = _ints(tok[1:], lineno)
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", lineno)
        A.append(row)

    ordering = None
    meta: dict[str, int | str] = {}
    for lineno, tok in rest[m:]:
        if tok[0] == "order" and ordering is None:
            perm = _ints(tok[1:], lineno)
            if sorted(perm) != list(range(1, n + 1)):
                raise ParseError(f"order is not a permutation of 1..{n}", lineno)
            ordering = PathOrdering(tuple(p - 1 for p in perm))
        elif tok[0] == "meta" and not meta:
            for item in tok[1:]:
                key, sep, value = item.partition("=")
                if not sep or not key:
                    raise ParseError(f"bad meta item {item!r}", lineno)
                meta[key] = _meta_value(value)
        else:
            raise ParseError(f"unexpected line starting with {tok[0]!r}", lineno)
    try:
        return IpInstance(tuple(map(tuple, A)), tuple(b), ordering, meta)
    except ContractError as exc:
        raise ParseError(str(exc)) from exc


def read_instance(path) -> IpInstance:
    with open(path) as fh:
        return parse_instance(fh.read())


def save_instance(inst: IpInstance, path):
    with open(path, "w") as fh:
        fh.write(write_instance(inst))
