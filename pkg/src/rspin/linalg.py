"""Sparse exact Gaussian elimination over Q(zeta_r).

Matrices are lists of rows, each row a dict ``{column: CycQ}`` holding only
nonzero entries.  Everything here is exact; pivots are chosen by position,
never by magnitude.
"""

from __future__ import annotations

from rspin.cyclotomic import CycQ


def _clean(row):
    return {c: v for c, v in row.items() if v}


def echelon(rows):
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivots)`` where ``pivots[i]`` is the pivot
    column of ``reduced_rows[i]`` and every pivot entry equals 1.
    """
    work = [_clean(r) for r in rows]
    work = [r for r in work if r]
    reduced: list[dict] = []
    pivots: list = []
    for row in work:
        # eliminate against existing pivots
        for prow, pc in zip(reduced, pivots):
            c = row.get(pc)
            if c:
                for col, v in prow.items():
                    nv = row.get(col)
                    nv = -(c * v) if nv is None else nv - c * v
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
        if not row:
            continue
        pc = min(row)
        inv = row[pc].inv()
        row = {col: v * inv for col, v in row.items()}
        # back-substitute into earlier rows
        for i, prow in enumerate(reduced):
            c = prow.get(pc)
            if c:
                for col, v in row.items():
                    nv = prow.get(col)
                    nv = -(c * v) if nv is None else nv - c * v
                    if nv:
                        prow[col] = nv
                    else:
                        prow.pop(col, None)
        reduced.append(row)
        pivots.append(pc)
    return reduced, pivots


def rank(rows) -> int:
    return len(echelon(rows)[1])


def nullspace(rows, columns, r: int) -> list[dict]:
    """Basis of ``{v : M v = 0}``; ``columns`` lists every column key in order."""
    reduced, pivots = echelon(rows)
    pivot_set = set(pivots)
    basis = []
    for free in columns:
        if free in pivot_set:
            continue
        vec = {free: CycQ.one(r)}
        for prow, pc in zip(reduced, pivots):
            c = prow.get(free)
            if c:
                vec[pc] = -c
        basis.append(vec)
    return basis


def solve(rows, rhs, r: int):
    """One solution of ``M v = rhs`` (rhs a list aligned with rows), or None."""
    marker = object()
    aug = []
    for row, b in zip(rows, rhs):
        new = dict(row)
        if b:
            new[marker] = b
        aug.append(new)
    # the marker column must sort after every real column
    keyed = [{(0, k) if k is not marker else (1, 0): v for k, v in row.items()}
             for row in aug]
    reduced, pivots = echelon(keyed)
    if (1, 0) in pivots:
        return None
    sol = {}
    for prow, pc in zip(reduced, pivots):
        b = prow.get((1, 0))
        if b:
            sol[pc[1]] = b
    return sol
