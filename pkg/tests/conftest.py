"""Shared fixtures and independent brute-force oracles."""

from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from resonaut import validate_spec
from resonaut.exactnum import Cyclotomic


CUBIC_RAW = {"n": 3, "exponents": [[1, 0, 0], [0, 0, 1], [1, 0, 1]]}

# planar suite: ell <= 2, coordinate sums <= 3
PLANAR_RAW = [
    {"n": 2, "exponents": [[1, 1]]},
    {"n": 2, "exponents": [[2, 1]]},
    {"n": 2, "exponents": [[-1, 2]]},
    {"n": 2, "exponents": [[1, 0], [0, 1]]},
    {"n": 2, "exponents": [[2, 0], [0, 1]]},
    {"n": 2, "exponents": [[2, 1], [1, 2]]},
]


@pytest.fixture(scope="session")
def cubic():
    return validate_spec(CUBIC_RAW)


@pytest.fixture(scope="session")
def planar_suite():
    return [validate_spec(raw) for raw in PLANAR_RAW]


def random_cyclotomic(order, rng, nonzero=False):
    while True:
        value = Cyclotomic(
            order,
            [
                Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                for _ in range(order - 1)
            ],
        )
        if value or not nonzero:
            return value


def random_rational(rng, nonzero=False):
    while True:
        value = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if value or not nonzero:
            return value


# -- brute-force monoid oracle ----------------------------------------------


def vectors_up_to(length, max_total):
    """All nonnegative integer vectors of the given length with sum <= max_total."""
    for total in range(max_total + 1):
        for slots in combinations_with_replacement(range(length), total):
            vec = [0] * length
            for s in slots:
                vec[s] += 1
            yield tuple(vec)


def in_kernel(matrix, vec):
    return all(sum(r * v for r, v in zip(row, vec)) == 0 for row in matrix)


def enumerate_monoid(matrix, length, max_total):
    """All nonzero monoid elements (kernel vectors >= 0) with sum <= max_total."""
    out = []
    for vec in vectors_up_to(length, max_total):
        if any(vec) and in_kernel(matrix, vec):
            out.append(vec)
    return out


def is_irreducible(matrix, vec):
    """No decomposition vec = u + w with both parts nonzero monoid elements."""
    length = len(vec)
    ranges = [range(e + 1) for e in vec]

    def rec(i, current):
        if i == length:
            u = tuple(current)
            if not any(u) or u == vec:
                return False
            w = tuple(a - b for a, b in zip(vec, u))
            return in_kernel(matrix, u) and in_kernel(matrix, w)
        for e in ranges[i]:
            if rec(i + 1, current + [e]):
                return True
        return False

    return not rec(0, [])


def generated_by(element, basis):
    """Is the element a nonnegative integer combination of the basis vectors?"""
    memo = {}

    def rec(vec):
        if not any(vec):
            return True
        if vec in memo:
            return memo[vec]
        ok = False
        for b in basis:
            if all(x <= y for x, y in zip(b, vec)):
                if rec(tuple(y - x for x, y in zip(b, vec))):
                    ok = True
                    break
        memo[vec] = ok
        return ok

    return rec(tuple(element))
