import random
from fractions import Fraction

import pytest

from resonaut.exactnum import Cyclotomic, cyclotomic_field
from resonaut.invariants import parameter_ring, reversibility_ideal_IR
from resonaut.normalform import (
    NormalFormError,
    eigenvalue_divisor,
    family_vector_field,
    is_resonant,
    nf_invariance_check,
    normal_form,
    poincare_dulac,
    truncated_first_integral,
)
from resonaut.resonant import (
    L_map,
    alphas_from_scalings,
    check_cond_rev,
    parameter_vars,
    reversible_point,
    validate_spec,
)

from conftest import random_cyclotomic


# -- resonance test ------------------------------------------------------------


def test_resonant_first_coordinate():
    assert is_resonant(3, 1, (2, 1, 1))


def test_nonresonant_power():
    assert not is_resonant(3, 1, (2, 0, 0))
    # the eigenvalue combination is exactly 2 - 1 = 1
    assert eigenvalue_divisor(3, 1, (2, 0, 0)) == 1


def test_resonant_second_coordinate_planar():
    assert is_resonant(2, 2, (1, 2))


def test_resonance_matches_vanishing_divisor():
    rng = random.Random(3)
    for n in (2, 3, 5):
        for _ in range(100):
            alpha = tuple(rng.randint(0, 3) for _ in range(n))
            if sum(alpha) < 2:
                continue
            k = rng.randint(1, n)
            assert is_resonant(n, k, alpha) == (not eigenvalue_divisor(n, k, alpha))


def test_resonance_preconditions():
    with pytest.raises(NormalFormError):
        is_resonant(3, 1, (1, 0, 0))
    with pytest.raises(NormalFormError):
        is_resonant(3, 4, (1, 1, 1))
    with pytest.raises(NormalFormError):
        is_resonant(3, 1, (1, 1))


# -- the normalization engine -----------------------------------------------------


def test_linear_field_passes_through(cubic):
    # strip the family down to its linear part: x_k * zeta^(k-1)
    components = family_vector_field(cubic)
    ring = components[0].ring
    linear = []
    for k, comp in enumerate(components):
        mono = tuple(1 if i == k else 0 for i in range(3)) + (0,) * 9
        linear.append(ring.from_terms([(mono, comp.terms[mono])]))
    normalized, _ = poincare_dulac(linear, 3, 6)
    assert normalized == linear


def test_already_normal_family_unchanged():
    # every term of this planar family is resonant, so nothing moves
    spec = validate_spec({"n": 2, "exponents": [[1, 1]]})
    components = family_vector_field(spec)
    normalized, _ = poincare_dulac(components, 2, 5)
    assert list(normalized) == list(components)
    nf = normal_form(spec, 3)
    ring = nf.ring
    assert nf.coefficient(1, 1) == ring.var("a11")
    assert nf.coefficient(2, 1) == ring.var("b11")


def test_normalization_idempotent_on_cubic_output(cubic):
    nf = normal_form(cubic, 4)
    again, _ = poincare_dulac(list(nf.components), 3, 4)
    assert list(again) == list(nf.components)


def test_output_purity_and_grading(cubic):
    nf = normal_form(cubic, 4)
    n = cubic.n
    for k in range(1, n + 1):
        for mono in nf.components[k - 1].terms:
            degree = sum(mono[:n])
            if degree <= 1:
                continue
            assert is_resonant(n, k, mono[:n])
    for (k, i), poly in nf.coefficients.items():
        for mono in poly.terms:
            assert L_map(cubic, mono) == (i,) * n


def test_truncation_order_validated(cubic):
    with pytest.raises(NormalFormError):
        normal_form(cubic, 1)


# -- cubic normal form at order 4 ---------------------------------------------------


def expected_cubic_coefficients(cubic):
    """Order-4 resonant coefficients, assembled from the reference radical
    combinations with (-1)^(1/3) = 1 + zeta and (-1)^(2/3) = zeta."""
    ring = parameter_ring(cubic, cyclotomic_field(3))
    z = ring.field.zeta()
    u = 1 + z       # (-1)^(1/3)
    v = z           # (-1)^(2/3)
    third = Fraction(1, 3)

    def mono(*names):
        poly = ring.one()
        for name in names:
            poly = poly * ring.var(name)
        return poly

    q11 = (
        mono("a001", "a100", "c010") * (third + 2 * third * u + third * v)
        - mono("a101", "c010") * u
        + mono("a001", "b100", "c010") * (third - third * u - 2 * third * v)
    )
    q21 = (
        mono("a001", "b010", "b100") * (third * v - 2 * third - third * u)
        + mono("a001", "b110") * v
        + mono("a001", "b100", "c010") * (third + 2 * third * u + third * v)
    )
    q31 = (
        mono("b100", "c001", "c010") * (third - third * u - 2 * third * v)
        + mono("a001", "b100", "c010") * (-2 * third - third * u + third * v)
        + mono("b100", "c011")
    )
    return {(1, 1): q11, (2, 1): q21, (3, 1): q31}


def test_cubic_normal_form_order_four(cubic):
    nf = normal_form(cubic, 4)
    expected = expected_cubic_coefficients(cubic)
    assert set(nf.coefficients) == set(expected)
    for key, poly in expected.items():
        assert nf.coefficients[key] == poly, key


def test_cubic_invariance(cubic):
    nf = normal_form(cubic, 4)
    assert nf_invariance_check(nf, cubic)


def test_planar_invariance():
    spec = validate_spec({"n": 2, "exponents": [[1, 1]]})
    assert nf_invariance_check(normal_form(spec, 3), spec)


# -- first integrals -------------------------------------------------------------------


def zero_point(spec):
    field = cyclotomic_field(spec.n)
    return {name: field.zero() for name in parameter_vars(spec)}


def test_integral_of_linear_system(cubic):
    result = truncated_first_integral(cubic, zero_point(cubic), 6)
    assert result.success
    assert result.coefficients == {(1, 1, 1): Cyclotomic.one(3)}


def test_integral_at_reversible_points(cubic):
    rng = random.Random(41)
    for _ in range(5):
        ys = [random_cyclotomic(3, rng, nonzero=True) for _ in range(3)]
        ts = [random_cyclotomic(3, rng, nonzero=True) for _ in range(2)]
        point, full_ts = reversible_point(cubic, ys, ts, zeta_power=1)
        assert check_cond_rev(cubic, point, alphas_from_scalings(cubic, full_ts), 1)
        result = truncated_first_integral(cubic, point, cubic.n + 3)
        assert result.success
        # reversible points satisfy every twisted-companion relation
        for gen in reversibility_ideal_IR(cubic).generators:
            assert not gen.eval(point)


def test_integral_obstructed_at_generic_point(cubic):
    rng = random.Random(43)
    point = {
        name: random_cyclotomic(3, rng, nonzero=True)
        for name in parameter_vars(cubic)
    }
    result = truncated_first_integral(cubic, point, 7)
    assert not result.success
    assert result.obstruction_degree is not None
    assert result.obstruction_degree <= 7
    assert result.obstruction_degree % 3 == 0
    (mono, residual), = result.residual.items()
    assert residual


def test_integral_order_validated(cubic):
    with pytest.raises(NormalFormError):
        truncated_first_integral(cubic, zero_point(cubic), 2)


def test_integral_missing_point_entry(cubic):
    with pytest.raises(NormalFormError):
        truncated_first_integral(cubic, {}, 4)
