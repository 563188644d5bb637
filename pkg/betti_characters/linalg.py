"""
Exact dense linear algebra over commutative rings and fields.

Nothing in here knows about a particular coefficient type; the functions work for `Fraction`, `FieldElement`,
univariate polynomials over a field and multivariate polynomials alike.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from betti_characters.exceptions import UsageError
from betti_characters.types import R


def _check_square(matrix: Sequence[Sequence[R]]) -> int:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise UsageError('Expected a square matrix, got {rows} rows of lengths {lengths}.'
                             .format(rows=n, lengths=sorted({len(r) for r in matrix})))
    return n


def determinant(matrix: Sequence[Sequence[R]], zero: R, one: R) -> R:
    """
    Cofactor expansion along the rows, memoized on the set of remaining columns. Division free, so it is valid
    over any commutative ring.
    """
    n = _check_square(matrix)
    minors: Dict[int, R] = {0: one}

    # `remaining` is a bitmask of the columns still available; the row being expanded is implied by how many
    # columns have been used already.
    def minor(remaining: int) -> R:
        if remaining in minors:
            return minors[remaining]
        row = n - bin(remaining).count('1')
        total = zero
        sign = 1
        for column in range(n):
            if not remaining & (1 << column):
                continue
            entry = matrix[row][column]
            if entry:
                term = entry * minor(remaining & ~(1 << column))
                total = total + term if sign > 0 else total - term
            sign = -sign
        minors[remaining] = total
        return total

    return minor((1 << n) - 1)


def matrix_product(left: Sequence[Sequence[R]], right: Sequence[Sequence[R]], zero: R) -> List[List[R]]:
    inner = len(right)
    if any(len(row) != inner for row in left):
        raise UsageError('Matrix dimensions do not match for multiplication.')
    columns = len(right[0]) if inner else 0
    result = []
    for row in left:
        out = []
        for j in range(columns):
            total = zero
            for k in range(inner):
                if row[k] and right[k][j]:
                    total = total + row[k] * right[k][j]
            out.append(total)
        result.append(out)
    return result


def identity_matrix(n: int, zero: R, one: R) -> List[List[R]]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def row_reduce(rows: Sequence[Sequence[R]]) -> Tuple[List[List[R]], List[int]]:
    """
    Reduced row echelon form of a matrix over a field. Returns the nonzero rows of the echelon form and their
    pivot columns; every returned row has a one at its pivot and zeros at the pivots of the other rows.
    """
    work = [list(row) for row in rows if any(row)]
    if not work:
        return [], []
    width = len(work[0])
    pivots: List[int] = []
    rank = 0
    for column in range(width):
        pivot_row = next((r for r in range(rank, len(work)) if work[r][column]), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inverse = work[rank][column] ** -1
        work[rank] = [entry * inverse for entry in work[rank]]
        pivot = work[rank]
        for r in range(len(work)):
            if r != rank and work[r][column]:
                factor = work[r][column]
                work[r] = [a - factor * b if b else a for a, b in zip(work[r], pivot)]
        pivots.append(column)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def rank(rows: Sequence[Sequence[R]]) -> int:
    return len(row_reduce(rows)[1])


def coordinates(vector: Sequence[R], pivots: Sequence[int]) -> List[R]:
    """
    Coordinates of a vector in the span of a reduced echelon basis, read off at the pivot columns. The caller
    guarantees that the vector lies in the span.
    """
    return [vector[p] for p in pivots]
