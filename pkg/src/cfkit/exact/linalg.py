"""Exact Gaussian elimination over Q."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InconsistentSystemError, NonUniqueSolutionError


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve matrix @ x = rhs exactly.

    Accepts square or overdetermined systems.  Pivots on the entry with the
    largest numerator magnitude.  Raises InconsistentSystemError when no
    solution exists and NonUniqueSolutionError (with the free columns) when
    the solution is not unique.
    """
    rows = len(matrix)
    if rows != len(rhs):
        raise ValueError("matrix and rhs have different row counts")
    cols = len(matrix[0]) if rows else 0
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    if any(len(r) != cols + 1 for r in a):
        raise ValueError("ragged matrix")

    pivots = []
    r = 0
    for c in range(cols):
        best = None
        for i in range(r, rows):
            if a[i][c] and (best is None or abs(a[i][c].numerator) > abs(a[best][c].numerator)):
                best = i
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        piv = a[r][c]
        row_r = [v / piv for v in a[r]]
        a[r] = row_r
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], row_r)]
        pivots.append(c)
        r += 1
        if r == rows:
            break

    for i in range(r, rows):
        if a[i][cols]:
            raise InconsistentSystemError("linear system has no solution")
    if r < cols:
        free = [c for c in range(cols) if c not in pivots]
        raise NonUniqueSolutionError("linear system has infinitely many solutions", free)
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return x


def solve_pinned(matrix, rhs) -> tuple[list[Fraction], tuple[int, ...]]:
    """Like solve_linear, but free columns are pinned to zero instead of raising."""
    try:
        return solve_linear(matrix, rhs), ()
    except NonUniqueSolutionError as exc:
        free = exc.free_columns
    keep = [c for c in range(len(matrix[0])) if c not in free]
    reduced = [[row[c] for c in keep] for row in matrix]
    sub = solve_linear(reduced, rhs) if keep else []
    if not keep and any(rhs):
        raise InconsistentSystemError("linear system has no solution")
    x = [Fraction(0)] * len(matrix[0])
    for c, v in zip(keep, sub):
        x[c] = v
    return x, free


def mat_vec(matrix, vec) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix]
