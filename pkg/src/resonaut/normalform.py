"""Poincare-Dulac normal forms for the resonant family, kept symbolic.

Phase variables x1..xn and the system parameters live in one ring over
Q(zeta_n); truncation bookkeeping counts phase degree only.  With the
linear part diag(1, zeta, ..., zeta^(n-1)) the resonant monomials of
coordinate k are exactly x_k * (x1*...*xn)^i, so a truncated normal form
is a table of coefficient polynomials q_(k,i) in the parameters.

The degree-by-degree normalization removes every non-resonant term by
exact division with the eigenvalue combination zeta-bar . alpha - zeta^(k-1)
and fixes the non-uniqueness by zeroing the resonant components of the
transformation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import Cyclotomic, cyclotomic_field
from .groebner import SubalgebraTester
from .multipoly import PolyRing, Polynomial
from .resonant import (
    L_map,
    SystemSpec,
    cyclic_shift,
    parameter_vars,
)
from .invariants import parameter_ring, spec_hilbert_basis


class NormalFormError(ValueError):
    pass


def is_resonant(n: int, k: int, alpha) -> bool:
    """True iff alpha = (i,...,i) + e_k for some i >= 1.

    Equivalently the eigenvalue combination zeta-bar . alpha - zeta^(k-1)
    vanishes exactly; for prime n the only integer relation among the
    powers of zeta is the vanishing of their sum."""
    if len(alpha) != n:
        raise NormalFormError(f"exponent length {len(alpha)} != n = {n}")
    if not 1 <= k <= n:
        raise NormalFormError(f"coordinate {k} out of range 1..{n}")
    if sum(alpha) < 2:
        raise NormalFormError("resonance is defined for total degree >= 2")
    i = alpha[k - 1] - 1
    if i < 1:
        return False
    return all(alpha[j] == i for j in range(n) if j != k - 1)


def eigenvalue_divisor(n: int, k: int, alpha) -> Cyclotomic:
    """zeta-bar . alpha - zeta^(k-1); zero exactly on resonant exponents."""
    field = cyclotomic_field(n)
    total = -field.zeta(k - 1)
    for j, e in enumerate(alpha):
        if e:
            total = total + e * field.zeta(j)
    return total


def family_ring(spec: SystemSpec):
    """Ring Q(zeta)[x1..xn, parameters]; returns (ring, phase names)."""
    field = cyclotomic_field(spec.n)
    phase = tuple(f"x{i + 1}" for i in range(spec.n))
    params = parameter_vars(spec)
    clash = set(phase) & set(params)
    if clash:
        raise NormalFormError(f"phase names collide with parameters: {sorted(clash)}")
    return PolyRing(phase + params, field), phase


def family_vector_field(spec: SystemSpec):
    """The symbolic family: component k is
    zeta^(k-1) x_k + x_k * sum_j a_(j,k) x^(shifted p^(j))."""
    ring, phase = family_ring(spec)
    n = spec.n
    field = ring.field
    names = parameter_vars(spec)
    components = []
    for k in range(n):
        terms = {}
        e_k = tuple(1 if i == k else 0 for i in range(n))
        lam = field.zeta(k)
        terms[e_k + (0,) * spec.nparams] = lam
        for j, p in enumerate(spec.exponents):
            q = p
            for _ in range(k):
                q = cyclic_shift(q)
            mono_phase = tuple(a + b for a, b in zip(e_k, q))
            if any(e < 0 for e in mono_phase):
                raise NormalFormError("family term with a negative phase exponent")
            mono_param = tuple(
                1 if t == j * n + k else 0 for t in range(spec.nparams)
            )
            terms[mono_phase + mono_param] = field.one()
        components.append(Polynomial(ring, terms))
    return components


def _phase_degree(mono, n: int) -> int:
    return sum(mono[:n])


def _truncate(poly: Polynomial, n: int, k_max: int) -> Polynomial:
    kept = {m: c for m, c in poly.terms.items() if _phase_degree(m, n) <= k_max}
    if len(kept) == len(poly.terms):
        return poly
    return Polynomial(poly.ring, kept)


def _phase_partial(poly: Polynomial, j: int) -> Polynomial:
    """Partial derivative with respect to the j-th phase variable (0-based)."""
    out = {}
    for mono, coeff in poly.terms.items():
        e = mono[j]
        if not e:
            continue
        lowered = mono[:j] + (e - 1,) + mono[j + 1 :]
        out[lowered] = coeff * e
    return Polynomial(poly.ring, out)


def _substitute_phase(poly: Polynomial, subs, n: int, k_max: int) -> Polynomial:
    """Substitute x_i -> subs[i] (each of phase degree >= 1), truncating."""
    ring = poly.ring
    power_cache = {}

    def power(i, e):
        key = (i, e)
        hit = power_cache.get(key)
        if hit is not None:
            return hit
        if e == 0:
            result = ring.one()
        else:
            result = _truncate(power(i, e - 1) * subs[i], n, k_max)
        power_cache[key] = result
        return result

    total = ring.zero()
    for mono, coeff in poly.terms.items():
        if _phase_degree(mono, n) > k_max:
            continue
        piece = ring.monomial((0,) * n + mono[n:], coeff)
        for i in range(n):
            if mono[i]:
                piece = _truncate(piece * power(i, mono[i]), n, k_max)
                if not piece:
                    break
        total = total + piece
    return total


def poincare_dulac(components, n: int, k_max: int):
    """Normalize a vector field with linear part diag(1, zeta, .., zeta^(n-1)).

    Components live in a ring whose first n variables are the phase
    variables.  Returns (normalized components, generators used), where the
    stage-j generator is the homogeneous transformation that removed the
    non-resonant degree-j terms.  Resonant generator components are zero.
    """
    if k_max < 2:
        raise NormalFormError("truncation order must be at least 2")
    ring = components[0].ring
    field = ring.field
    current = [_truncate(c, n, k_max) for c in components]
    generators = []
    for degree in range(2, k_max + 1):
        h = [ring.zero() for _ in range(n)]
        removing = False
        for k in range(1, n + 1):
            for mono, coeff in current[k - 1].terms.items():
                if _phase_degree(mono, n) != degree:
                    continue
                alpha = mono[:n]
                if is_resonant(n, k, alpha):
                    continue
                divisor = eigenvalue_divisor(n, k, alpha)
                h[k - 1] = h[k - 1] + ring.monomial(mono, coeff / divisor)
                removing = True
        generators.append(tuple(h))
        if not removing:
            continue
        subs = [ring.var(ring.variables[i]) + h[i] for i in range(n)]
        substituted = [
            _substitute_phase(c, subs, n, k_max) for c in current
        ]
        # (I + Dh)^(-1) * F(y + h(y)) via the terminating Neumann series.
        jacobian = [
            [_phase_partial(h[i], j) for j in range(n)] for i in range(n)
        ]
        result = list(substituted)
        layer = substituted
        while any(layer):
            layer = [
                _truncate(
                    sum(
                        (jacobian[i][j] * layer[j] for j in range(n)),
                        ring.zero(),
                    ),
                    n,
                    k_max,
                )
                * (-1)
                for i in range(n)
            ]
            result = [r + item for r, item in zip(result, layer)]
        current = result
        # the processed degrees must now be purely resonant
        for k in range(1, n + 1):
            for mono in current[k - 1].terms:
                d = _phase_degree(mono, n)
                if 2 <= d <= degree and not is_resonant(n, k, mono[:n]):
                    raise NormalFormError(
                        f"degree-{d} term survived normalization at stage {degree}"
                    )
    return current, generators


@dataclass(frozen=True)
class NormalFormResult:
    """Truncated normal form: per-coordinate resonant coefficient table.

    coefficients maps (k, i) to the polynomial multiplying
    x_k * (x1*...*xn)^i; it is only populated for n*i + 1 <= k_max."""

    spec: SystemSpec
    k_max: int
    ring: PolyRing
    coefficients: dict
    components: tuple

    def coefficient(self, k: int, i: int) -> Polynomial:
        zero = self.ring.zero()
        return self.coefficients.get((k, i), zero)


def normal_form(spec: SystemSpec, k_max: int) -> NormalFormResult:
    """Truncated Poincare-Dulac normal form of the family, coefficients
    symbolic over Q(zeta).

    Every emitted term is checked to be resonant, and every parameter
    monomial of q_(k,i) is checked against the degree map: its image must
    be the constant vector (i,...,i)."""
    if k_max < 2:
        raise NormalFormError("truncation order must be at least 2")
    components = family_vector_field(spec)
    n = spec.n
    normalized, _ = poincare_dulac(components, n, k_max)
    param_ring = parameter_ring(spec, cyclotomic_field(spec.n))
    coefficients = {}
    for k in range(1, n + 1):
        for mono, coeff in normalized[k - 1].terms.items():
            degree = _phase_degree(mono, n)
            if degree <= 1:
                continue
            alpha = mono[:n]
            if not is_resonant(n, k, alpha):
                raise NormalFormError("non-resonant term in a normal form")
            i = alpha[k - 1] - 1
            nu = mono[n:]
            if L_map(spec, nu) != (i,) * n:
                raise NormalFormError(
                    "normal-form coefficient violates the degree grading"
                )
            key = (k, i)
            acc = coefficients.get(key, param_ring.zero())
            coefficients[key] = acc + param_ring.monomial(nu, coeff)
    return NormalFormResult(
        spec=spec,
        k_max=k_max,
        ring=param_ring,
        coefficients=coefficients,
        components=tuple(normalized),
    )


def nf_invariance_check(nf: NormalFormResult, spec: SystemSpec) -> bool:
    """Every resonant coefficient must lie in the subalgebra generated by
    the invariant-monoid monomials of the Hilbert basis."""
    ring = nf.ring
    gens = [ring.monomial(nu) for nu in spec_hilbert_basis(spec).vectors]
    queries = [poly for poly in nf.coefficients.values() if poly]
    if not queries:
        return True
    tester = SubalgebraTester(gens)
    return all(tester.member(poly).member for poly in queries)


@dataclass(frozen=True)
class FirstIntegralResult:
    """Either the coefficient table of a truncated first integral starting
    at x1*...*xn, or the first obstructed degree with its residual."""

    spec: SystemSpec
    k_max: int
    success: bool
    coefficients: dict | None = None
    obstruction_degree: int | None = None
    residual: dict | None = None


def truncated_first_integral(spec: SystemSpec, point: dict, k_max: int) -> FirstIntegralResult:
    """Solve grad(Psi) . F = 0 modulo degree k_max + 1 at an exact point.

    Psi starts from the product of the phase variables; each further degree
    is an exact linear solve, dividing by zeta-bar . alpha, and a monomial
    with vanishing divisor whose right-hand side does not vanish is the
    obstruction certificate."""
    n = spec.n
    if k_max < n:
        raise NormalFormError(f"truncation order must be at least n = {n}")
    field = cyclotomic_field(n)
    phase = tuple(f"x{i + 1}" for i in range(n))
    ring = PolyRing(phase, field)
    names = parameter_vars(spec)
    values = {}
    for name in names:
        if name not in point:
            raise NormalFormError(f"point is missing parameter {name!r}")
        values[name] = field.coerce(point[name])

    components = []
    for k in range(n):
        e_k = tuple(1 if i == k else 0 for i in range(n))
        terms = {e_k: field.zeta(k)}
        for j, p in enumerate(spec.exponents):
            q = p
            for _ in range(k):
                q = cyclic_shift(q)
            coeff = values[names[j * n + k]]
            if not coeff:
                continue
            mono = tuple(a + b for a, b in zip(e_k, q))
            acc = terms.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)
        components.append(Polynomial(ring, terms))

    psi_terms = {(1,) * n: field.one()}
    for degree in range(n + 1, k_max + 1):
        psi = Polynomial(ring, dict(psi_terms))
        transported = ring.zero()
        for k in range(n):
            transported = transported + _phase_partial(psi, k) * components[k]
        rhs = {
            m: c for m, c in transported.terms.items() if sum(m) == degree
        }
        for mono, coeff in sorted(rhs.items()):
            divisor = eigenvalue_divisor_for_integral(field, mono)
            if divisor:
                psi_terms[mono] = -coeff / divisor
            else:
                return FirstIntegralResult(
                    spec=spec,
                    k_max=k_max,
                    success=False,
                    obstruction_degree=degree,
                    residual={mono: coeff},
                )
    return FirstIntegralResult(
        spec=spec, k_max=k_max, success=True, coefficients=dict(psi_terms)
    )


def eigenvalue_divisor_for_integral(field, alpha) -> Cyclotomic:
    """zeta-bar . alpha; vanishes exactly on the constant exponent vectors."""
    total = field.zero()
    for j, e in enumerate(alpha):
        if e:
            total = total + e * field.zeta(j)
    return total
