import random
from fractions import Fraction

from resonaut.intlinalg import hermite_normal_form, kernel_basis, matvec, rank


def _det(matrix):
    # fraction-free enough for testing: straightforward Gaussian elimination
    n = len(matrix)
    rows = [[Fraction(x) for x in r] for r in matrix]
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            factor = rows[i][c] / rows[c][c]
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[c])]
    return det


def _matmul(a, b):
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a
    )


def test_hnf_reconstructs_input():
    rng = random.Random(3)
    for _ in range(30):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        matrix = tuple(
            tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(m)
        )
        h, u = hermite_normal_form(matrix)
        assert _matmul(u, matrix) == h
        assert abs(_det(u)) == 1
        # echelon: pivot columns strictly increase and pivots are positive
        last = -1
        for row in h:
            nz = [j for j, x in enumerate(row) if x]
            if not nz:
                continue
            assert nz[0] > last
            last = nz[0]
            assert row[nz[0]] > 0


def test_kernel_vectors_annihilate():
    rng = random.Random(4)
    for _ in range(30):
        m = rng.randint(1, 3)
        n = rng.randint(1, 5)
        matrix = tuple(
            tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(m)
        )
        basis = kernel_basis(matrix)
        for v in basis:
            assert not any(matvec(matrix, v))
        assert len(basis) == n - rank(matrix)


def test_kernel_known_cases():
    basis = kernel_basis(((1, -1),))
    assert len(basis) == 1
    v = basis[0]
    assert v[0] == v[1] != 0
    assert kernel_basis(((1, 0), (0, 1))) == ()
    full = kernel_basis(())
    assert full == ()  # no columns known


def test_kernel_of_empty_row_matrix():
    # matvec with zero rows: kernel is everything
    assert len(kernel_basis([[0, 0, 0]])) == 3
