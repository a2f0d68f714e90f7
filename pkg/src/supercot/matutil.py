"""Small dense matrices over the exact scalar ring."""

from __future__ import annotations

from .coeff import Scalar

Matrix = list[list[Scalar]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Scalar.zero() for _ in range(cols)] for _ in range(rows)]


def identity(size: int, factor: Scalar | int = 1) -> Matrix:
    mat = zeros(size, size)
    scale = Scalar.coerce(factor)
    for k in range(size):
        mat[k][k] = scale
    return mat


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, factor: Scalar | int) -> Matrix:
    factor = Scalar.coerce(factor)
    return [[x * factor for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = zeros(rows, cols)
    for i in range(rows):
        for k in range(inner):
            left = a[i][k]
            if not left:
                continue
            row_b = b[k]
            row_out = out[i]
            for j in range(cols):
                if row_b[j]:
                    row_out[j] = row_out[j] + left * row_b[j]
    return out


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a))


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def rank_over_field(rows: list[list[Scalar]]) -> int:
    """Rank over the field Q(i, sqrt2); entries must be h-free."""
    work = [row[:] for row in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col].inv()
        work[rank] = [entry * inv for entry in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def to_json(a: Matrix) -> list[list[list[dict]]]:
    return [[entry.to_json() for entry in row] for row in a]
