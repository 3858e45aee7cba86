"""The resonant polynomial ODE family and its combinatorial data.

A system specification is a prime n plus an ordered list of integer
exponent vectors p with first entry >= -1, remaining entries >= 0 and
coordinate sum >= 1.  Coordinate k of the family carries the nonlinear
terms x_k * a * x^(T^(k-1) p), where T cyclically permutes exponents, and
the linear part is diag(1, zeta, ..., zeta^(n-1)).

This module derives everything combinatorial: the ordered parameter
variables, the degree-map matrix and its difference form whose nonnegative
kernel is the invariant monoid, the two lifted matrices used for the
equivariant and reversible ideals, the blockwise conjugation involution,
the invariance defect sigma, the root-of-unity weight, and the pointwise
reversibility condition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .exactnum import Cyclotomic, cyclotomic_field, is_prime
from .intlinalg import kernel_basis, matvec


class SpecError(ValueError):
    """A system specification violated one of its invariants."""


@dataclass(frozen=True)
class SystemSpec:
    """Validated system family: prime order n and exponent list."""

    n: int
    exponents: tuple

    @property
    def ell(self) -> int:
        return len(self.exponents)

    @property
    def nparams(self) -> int:
        return self.n * len(self.exponents)

    def describe(self) -> str:
        exps = ", ".join("(" + ",".join(str(e) for e in p) + ")" for p in self.exponents)
        return f"n={self.n}, S=[{exps}]"


def validate_spec(raw) -> SystemSpec:
    """Build a SystemSpec, or raise SpecError naming the violated invariant."""
    if isinstance(raw, SystemSpec):
        return raw
    if isinstance(raw, dict):
        try:
            n = raw["n"]
            exponents = raw["exponents"]
        except KeyError as exc:
            raise SpecError(f"spec is missing the {exc.args[0]!r} entry") from None
    else:
        try:
            n, exponents = raw
        except (TypeError, ValueError):
            raise SpecError("spec must provide n and an exponent list") from None
    if not isinstance(n, int) or not is_prime(n):
        raise SpecError(f"n must be prime, got {n!r}")
    vectors = []
    for p in exponents:
        p = tuple(int(e) for e in p)
        if len(p) != n:
            raise SpecError(f"exponent vector {p} must have length n={n}")
        if p[0] < -1:
            raise SpecError(f"exponent vector {p}: first entry must be >= -1")
        for e in p[1:]:
            if e < 0:
                raise SpecError(
                    f"exponent vector {p}: negative entry beyond position 1"
                )
        if sum(p) < 1:
            raise SpecError(f"exponent vector {p}: coordinate sum must be >= 1")
        if p in vectors:
            raise SpecError(f"duplicate exponent vector {p}")
        vectors.append(p)
    if not vectors:
        raise SpecError("spec needs at least one exponent vector")
    return SystemSpec(n, tuple(vectors))


def load_spec(path) -> SystemSpec:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed spec file {path}: {exc}") from exc
    return validate_spec(raw)


def cyclic_shift(p):
    """One application of the exponent permutation T: (p1..pn) -> (pn, p1..p(n-1))."""
    return (p[-1],) + tuple(p[:-1])


def shifted(p, times: int):
    for _ in range(times % len(p)):
        p = cyclic_shift(p)
    return p


def _subscript(p) -> str:
    if all(0 <= e <= 9 for e in p):
        return "".join(str(e) for e in p)
    return ",".join("m1" if e == -1 else str(e) for e in p)


@lru_cache(maxsize=None)
def parameter_vars(spec: SystemSpec):
    """Ordered parameter variable names, blockwise per exponent vector.

    Block k lists the coefficients of coordinates 1..n in order; coordinate
    j uses the j-th letter a, b, c, ... with the exponent subscript of the
    (j-1)-fold shifted vector, e.g. block (1,0,0) of a cubic system gives
    a100, b010, c001.
    """
    if spec.n > 26:
        raise SpecError("coordinate letters are exhausted beyond n = 26")
    names = []
    for p in spec.exponents:
        q = p
        for j in range(spec.n):
            names.append(chr(ord("a") + j) + _subscript(q))
            q = cyclic_shift(q)
    return tuple(names)


def parameter_var(spec: SystemSpec, block: int, coord: int) -> str:
    """Name of the coordinate-`coord` coefficient in block `block` (1-based)."""
    return parameter_vars(spec)[(block - 1) * spec.n + (coord - 1)]


@lru_cache(maxsize=None)
def L_matrix(spec: SystemSpec):
    """The n x (n*ell) degree map: column (k, m) is the m-fold shift of p^(k)."""
    columns = []
    for p in spec.exponents:
        q = p
        for _ in range(spec.n):
            columns.append(q)
            q = cyclic_shift(q)
    return tuple(
        tuple(col[i] for col in columns) for i in range(spec.n)
    )


def L_map(spec: SystemSpec, nu):
    _check_length(spec, nu)
    return matvec(L_matrix(spec), nu)


@lru_cache(maxsize=None)
def M_matrix(spec: SystemSpec):
    """(n-1) x (n*ell) matrix of consecutive differences of the degree map.

    Its nonnegative integer kernel is exactly the invariant monoid."""
    big = L_matrix(spec)
    return tuple(
        tuple(a - b for a, b in zip(big[i], big[i + 1])) for i in range(spec.n - 1)
    )


@lru_cache(maxsize=None)
def A_matrices(spec: SystemSpec):
    """The two (n-1+ell) x (n*ell) lifted matrices with identical kernels.

    Both stack block-membership indicator rows under a difference form of
    the degree map: the first uses consecutive differences (same top block
    as M_matrix), the second differences against the last coordinate.  The
    integer kernels are checked to coincide."""
    big = L_matrix(spec)
    top_a = list(M_matrix(spec))
    top_ahat = [
        tuple(a - b for a, b in zip(big[i], big[spec.n - 1]))
        for i in range(spec.n - 1)
    ]
    indicator = []
    width = spec.nparams
    for k in range(spec.ell):
        row = [0] * width
        for j in range(spec.n):
            row[k * spec.n + j] = 1
        indicator.append(tuple(row))
    mat_a = tuple(top_a + indicator)
    mat_ahat = tuple(top_ahat + indicator)
    for vec in kernel_basis(mat_a):
        if any(x != 0 for x in matvec(mat_ahat, vec)):
            raise SpecError("internal error: lifted-matrix kernels differ")
    for vec in kernel_basis(mat_ahat):
        if any(x != 0 for x in matvec(mat_a, vec)):
            raise SpecError("internal error: lifted-matrix kernels differ")
    return mat_a, mat_ahat


def _check_length(spec: SystemSpec, nu):
    if len(nu) != spec.nparams:
        raise SpecError(
            f"vector length {len(nu)} != parameter count {spec.nparams}"
        )


def involution(spec: SystemSpec, nu):
    """Blockwise conjugation: each block of n entries is rotated right once.

    Applying it n times is the identity."""
    _check_length(spec, nu)
    out = []
    n = spec.n
    for k in range(spec.ell):
        block = nu[k * n : (k + 1) * n]
        out.extend((block[-1],) + tuple(block[:-1]))
    return tuple(out)


def conjugacy_orbit(spec: SystemSpec, nu):
    """The orbit of nu under repeated conjugation (length divides n)."""
    orbit = [tuple(nu)]
    current = involution(spec, nu)
    while current != orbit[0]:
        orbit.append(current)
        current = involution(spec, current)
    return tuple(orbit)


def is_self_conjugate(spec: SystemSpec, nu) -> bool:
    return involution(spec, nu) == tuple(nu)


def sigma(spec: SystemSpec, nu) -> Cyclotomic:
    """Invariance defect: the degree map contracted with (1, zeta, ..., zeta^(n-1)).

    Zero exactly on the invariant monoid."""
    values = L_map(spec, nu)
    field = cyclotomic_field(spec.n)
    total = field.zero()
    for i, v in enumerate(values):
        if v:
            total = total + v * field.zeta(i)
    return total


def weight(spec: SystemSpec, nu) -> Cyclotomic:
    """Root-of-unity weight zeta^(sum over blocks of (0,1,...,n-1) . block)."""
    _check_length(spec, nu)
    n = spec.n
    exponent = 0
    for k in range(spec.ell):
        for j in range(n):
            exponent += j * nu[k * n + j]
    return Cyclotomic.zeta(n, exponent % n)


def in_invariant_monoid(spec: SystemSpec, nu) -> bool:
    """Membership of a nonnegative vector in the invariant monoid."""
    _check_length(spec, nu)
    if any(e < 0 for e in nu):
        return False
    return all(
        sum(r * v for r, v in zip(row, nu)) == 0 for row in M_matrix(spec)
    )


def alphas_from_scalings(spec: SystemSpec, ts):
    """Scaling ratios alpha_j = t_(j+1)/t_j (cyclically); their product is 1."""
    n = spec.n
    if len(ts) != n:
        raise SpecError(f"need {n} scaling factors, got {len(ts)}")
    field = cyclotomic_field(n)
    ts = [field.coerce(t) for t in ts]
    return tuple(ts[(j + 1) % n] / ts[j] for j in range(n))


def reversible_point(spec: SystemSpec, ys, ts, zeta_power: int = 1):
    """Parameter point of a reversible (or equivariant) system.

    Block k, coordinate j gets zeta^(j*zeta_power) * y_k * t^(shifted p^(k)),
    with the last scaling forced to make the product of the t's equal 1."""
    n = spec.n
    field = cyclotomic_field(n)
    if len(ys) != spec.ell:
        raise SpecError(f"need {spec.ell} block factors, got {len(ys)}")
    ts = [field.coerce(t) for t in ts]
    if len(ts) == n - 1:
        prod = field.one()
        for t in ts:
            prod = prod * t
        ts = ts + [prod.inverse()]
    if len(ts) != n:
        raise SpecError(f"need {n} (or {n - 1}) scaling factors, got {len(ts)}")
    prod = field.one()
    for t in ts:
        prod = prod * t
    if prod != field.one():
        raise SpecError("scaling factors must multiply to 1")
    point = {}
    names = parameter_vars(spec)
    for k, p in enumerate(spec.exponents):
        y = field.coerce(ys[k])
        q = p
        for j in range(n):
            value = field.zeta((j + 1) * zeta_power % n) * y
            for t, e in zip(ts, q):
                if e:
                    value = value * t**e
            point[names[k * n + j]] = value
            q = cyclic_shift(q)
    return point, ts


def check_cond_rev(spec: SystemSpec, point: dict, alphas, zeta_power: int) -> bool:
    """Pointwise reversibility test.

    True iff every equation  zeta^zp * a_(k,i) * alpha^(shifted p^(k)) = a_(k,i+1)
    (indices cyclic in i) holds exactly at the point.  zeta_power = 0 tests
    equivariance.  The alphas must multiply to 1."""
    n = spec.n
    field = cyclotomic_field(n)
    if len(alphas) != n:
        raise SpecError(f"need {n} alphas, got {len(alphas)}")
    alphas = [field.coerce(a) for a in alphas]
    prod = field.one()
    for a in alphas:
        prod = prod * a
    if prod != field.one():
        raise SpecError("product of alphas must equal 1")
    names = parameter_vars(spec)
    values = {}
    for name in names:
        if name not in point:
            raise SpecError(f"point is missing parameter {name!r}")
        values[name] = field.coerce(point[name])
    factor = field.zeta(zeta_power % n)
    for k, p in enumerate(spec.exponents):
        q = p
        for i in range(n):
            lhs = factor * values[names[k * n + i]]
            for a, e in zip(alphas, q):
                if e:
                    lhs = lhs * a**e
            rhs = values[names[k * n + (i + 1) % n]]
            if lhs != rhs:
                return False
            q = cyclic_shift(q)
    return True
