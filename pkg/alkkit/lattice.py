# alkkit/lattice.py
"""
Integer lattices: echelon bases and membership tests.
"""
from __future__ import annotations
from typing import List, Sequence, Tuple


def echelon_basis(vectors: Sequence[Sequence[int]], dim: int) -> List[Tuple[int, List[int]]]:
    """
    Row-echelon basis of the Z-span of `vectors`, as (pivot column, row) pairs.
    Rows are combined only by unimodular integer operations, so the span is unchanged.
    """
    rows = [list(v) for v in vectors if any(v)]
    for v in rows:
        if len(v) != dim:
            raise ValueError(f"vector of length {len(v)} in a rank-{dim} lattice")
    basis: List[Tuple[int, List[int]]] = []
    r = 0
    for col in range(dim):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[i_min] = rows[i_min], rows[r]
            pivot = rows[r]
            clean = True
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // pivot[col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], pivot)]
                    if rows[i][col]:
                        clean = False
            if clean:
                break
        if r < len(rows) and rows[r][col] != 0:
            basis.append((col, rows[r]))
            r += 1
    return basis


def in_integer_span(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """True iff `target` is an integer combination of `vectors`."""
    dim = len(target)
    rest = list(target)
    for col, row in echelon_basis(vectors, dim):
        if rest[col] % row[col]:
            return False
        q = rest[col] // row[col]
        rest = [a - q * b for a, b in zip(rest, row)]
    return not any(rest)
