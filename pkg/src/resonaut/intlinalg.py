"""Small exact integer linear algebra: Hermite normal form and kernels.

Everything here works on tuples of tuples of Python ints, which is plenty
for the matrix sizes produced by system specifications.
"""

from __future__ import annotations


def matvec(matrix, vector):
    return tuple(sum(r * v for r, v in zip(row, vector)) for row in matrix)


def hermite_normal_form(matrix):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and U*A = H; H is in row echelon form
    with positive pivots and reduced entries above each pivot.
    """
    rows = [list(r) for r in matrix]
    m = len(rows)
    n = len(rows[0]) if m else 0
    unimod = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    pivot_row = 0
    for col in range(n):
        if pivot_row >= m:
            break
        # Clear the column below pivot_row with a Euclidean loop.
        while True:
            nonzero = [i for i in range(pivot_row, m) if rows[i][col] != 0]
            if not nonzero:
                break
            src = min(nonzero, key=lambda i: (abs(rows[i][col]), i))
            if src != pivot_row:
                rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
                unimod[pivot_row], unimod[src] = unimod[src], unimod[pivot_row]
            done = True
            for i in range(pivot_row + 1, m):
                if rows[i][col] == 0:
                    continue
                q = rows[i][col] // rows[pivot_row][col]
                _row_sub(rows, unimod, i, pivot_row, q)
                if rows[i][col] != 0:
                    done = False
            if done:
                break
        if rows[pivot_row][col] == 0:
            continue
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-x for x in rows[pivot_row]]
            unimod[pivot_row] = [-x for x in unimod[pivot_row]]
        for i in range(pivot_row):
            q = rows[i][col] // rows[pivot_row][col]
            if q:
                _row_sub(rows, unimod, i, pivot_row, q)
        pivot_row += 1

    return tuple(tuple(r) for r in rows), tuple(tuple(r) for r in unimod)


def _row_sub(rows, unimod, i, j, q):
    rows[i] = [a - q * b for a, b in zip(rows[i], rows[j])]
    unimod[i] = [a - q * b for a, b in zip(unimod[i], unimod[j])]


def kernel_basis(matrix):
    """Integer lattice basis of {x : A x = 0}.

    Computed from the Hermite form of the transpose: the unimodular rows
    aligned with zero rows of H span the kernel.
    """
    matrix = tuple(tuple(r) for r in matrix)
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if n == 0:
        return ()
    if m == 0:
        return tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        )
    transpose = tuple(tuple(matrix[i][j] for i in range(m)) for j in range(n))
    hermite, unimod = hermite_normal_form(transpose)
    basis = [
        unimod[i] for i in range(n) if all(x == 0 for x in hermite[i])
    ]
    return tuple(basis)


def rank(matrix) -> int:
    matrix = tuple(tuple(r) for r in matrix)
    if not matrix:
        return 0
    hermite, _ = hermite_normal_form(matrix)
    return sum(1 for row in hermite if any(x != 0 for x in row))
