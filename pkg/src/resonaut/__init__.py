"""Exact invariants, binomial ideals and normal forms of resonant
polynomial ODE families with linear part diag(1, zeta, ..., zeta^(n-1)),
n prime.  All arithmetic is exact over Q or Q(zeta_n)."""

from .exactnum import Cyclotomic, CoefficientField, QQ, cyclotomic_field
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    eliminate,
    ideal_equal,
    ideal_member,
    reduce,
    s_polynomial,
    saturate,
    subalgebra_member,
    toric_kernel,
)
from .invariants import (
    HilbertBasis,
    SaturationReport,
    check_saturation_theorems,
    equivariant_ideal,
    hilbert_basis,
    lattice_ideal,
    lawrence_lift,
    parameter_ring,
    reversibility_ideal_IR,
    sibirsky_ideal,
    spec_hilbert_basis,
    two_dim_crosschecks,
    zeta_reversible_ideal,
)
from .multipoly import (
    DEGLEX,
    DEGREVLEX,
    LEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    block_order,
    monomial_compare,
)
from .normalform import (
    NormalFormResult,
    is_resonant,
    nf_invariance_check,
    normal_form,
    truncated_first_integral,
)
from .resonant import (
    SpecError,
    SystemSpec,
    A_matrices,
    L_matrix,
    M_matrix,
    check_cond_rev,
    involution,
    load_spec,
    parameter_vars,
    sigma,
    validate_spec,
    weight,
)

__version__ = "0.1.0"
