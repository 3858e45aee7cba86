"""Invariant monoids and the binomial ideals attached to a system family.

The invariant monoid of a specification is the set of nonnegative integer
vectors in the kernel of the difference matrix; its unique minimal
generating set (Hilbert basis) is computed through the Lawrence-lifted
binomial ideal.  On top of that sit the Sibirsky ideal, its
root-of-unity-twisted companion, the equivariant and reversible ideals
(each by two independent routes), and the saturation identities that
connect them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactnum import QQ, cyclotomic_field
from .groebner import (
    GroebnerBasis,
    GroebnerError,
    Ideal,
    buchberger,
    eliminate,
    ideal_equal,
    saturate,
    toric_kernel,
    verify_buchberger_criterion,
)
from .intlinalg import kernel_basis, matvec
from .multipoly import DEGLEX, PolyRing, block_order
from .resonant import (
    A_matrices,
    M_matrix,
    SpecError,
    SystemSpec,
    cyclic_shift,
    involution,
    is_self_conjugate,
    parameter_vars,
    weight,
)


def lawrence_lift(matrix, ncols: int | None = None):
    """Block matrix [[M, 0], [E, E]] with E the identity on the columns."""
    rows = [tuple(r) for r in matrix]
    if rows:
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
    elif ncols is None:
        raise ValueError("need the column count for an empty matrix")
    lifted = [r + (0,) * ncols for r in rows]
    for i in range(ncols):
        row = [0] * (2 * ncols)
        row[i] = 1
        row[ncols + i] = 1
        lifted.append(tuple(row))
    return tuple(lifted)


def hilbert_basis(matrix, ncols: int | None = None):
    """The minimal generating set of {v >= 0 : M v = 0}.

    Following the Lawrence-lifting algorithm: take the reduced Groebner
    basis of  < x_i - z_i * t^(column i) >  under an elimination order with
    the t's (and inverse partners for negative entries) in front, then read
    off the binomials of the shape x^v - z^v.
    """
    rows = [tuple(int(e) for e in r) for r in matrix]
    if rows:
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
    elif ncols is None:
        raise ValueError("need the column count for an empty matrix")
    d = len(rows)

    head = []
    partner = {}
    for j in range(d):
        head.append(f"t{j + 1}")
        if any(rows[j][i] < 0 for i in range(ncols)):
            partner[j] = f"s{j + 1}"
            head.append(partner[j])
    xs = [f"x{i + 1}" for i in range(ncols)]
    zs = [f"z{i + 1}" for i in range(ncols)]
    ring = PolyRing(tuple(head) + tuple(xs) + tuple(zs), QQ)
    if head:
        order = block_order(
            ("deglex", len(head)), ("deglex", ncols), ("deglex", ncols)
        )
    else:
        order = block_order(("deglex", ncols), ("deglex", ncols))

    gens = []
    for i in range(ncols):
        image = ring.var(zs[i])
        for j in range(d):
            e = rows[j][i]
            if e > 0:
                image = image * ring.var(f"t{j + 1}") ** e
            elif e < 0:
                image = image * ring.var(partner[j]) ** (-e)
        gens.append(ring.var(xs[i]) - image)
    for j, s in sorted(partner.items()):
        gens.append(ring.var(f"t{j + 1}") * ring.var(s) - ring.one())

    basis = buchberger(Ideal(ring, gens), order)

    nhead = len(head)
    vectors = []
    for g in basis.elements:
        if len(g.terms) != 2:
            continue
        (m1, c1), (m2, c2) = g.sorted_terms(order)
        if c1 != 1 or c2 != -1:
            continue
        if any(e for e in m1[:nhead]) or any(e for e in m2[:nhead]):
            continue
        x1, z1 = m1[nhead : nhead + ncols], m1[nhead + ncols :]
        x2, z2 = m2[nhead : nhead + ncols], m2[nhead + ncols :]
        if any(z1) or any(x2):
            continue
        if x1 != z2:
            continue
        vectors.append(x1)
    for v in vectors:
        if rows and any(matvec(rows, v)):
            raise GroebnerError("internal error: extracted vector outside kernel")
    return tuple(sorted(set(vectors), key=lambda v: (sum(v), v)))


@dataclass(frozen=True)
class HilbertBasis:
    """Hilbert basis of the invariant monoid of a specification."""

    spec: SystemSpec
    vectors: tuple


def spec_hilbert_basis(spec: SystemSpec) -> HilbertBasis:
    """Hilbert basis of the invariant monoid; closed under conjugation."""
    vectors = hilbert_basis(M_matrix(spec), ncols=spec.nparams)
    as_set = set(vectors)
    for v in vectors:
        if involution(spec, v) not in as_set:
            raise SpecError("internal error: basis not closed under conjugation")
    return HilbertBasis(spec, vectors)


def parameter_ring(spec: SystemSpec, field=QQ) -> PolyRing:
    return PolyRing(parameter_vars(spec), field)


def _normalized_binomial(ring, plus, minus, unit_plus=None, unit_minus=None):
    """unit_plus*[plus] - unit_minus*[minus], scaled monic in deglex."""
    left = ring.monomial(plus, 1 if unit_plus is None else unit_plus)
    right = ring.monomial(minus, 1 if unit_minus is None else unit_minus)
    g = left - right
    if not g:
        return None
    return g.monic(DEGLEX)


def sibirsky_ideal(spec: SystemSpec) -> Ideal:
    """The binomial ideal generated by [v] - [v^] over the invariant monoid.

    The emitted generators run over the Hilbert basis: one binomial per
    basis vector, skipping self-conjugate vectors, written with the
    deglex-larger monomial first; sign duplicates are pruned.
    """
    ring = parameter_ring(spec, QQ)
    gens = []
    seen = set()
    for nu in spec_hilbert_basis(spec).vectors:
        if is_self_conjugate(spec, nu):
            continue
        g = _normalized_binomial(ring, nu, involution(spec, nu))
        if g is None or g in seen:
            continue
        seen.add(g)
        gens.append(g)
    return Ideal(ring, gens)


def sibirsky_basis_is_groebner(spec: SystemSpec) -> bool:
    """Does the emitted Sibirsky generating set satisfy the Buchberger
    criterion under the canonical deglex order?

    The set always generates the ideal, and for n = 2 it is a Groebner
    basis (its binomials have support-disjoint monomials).  For n > 2 that
    argument breaks down and the property can genuinely fail, so it is
    verified and reported rather than assumed; the cubic showcase system is
    a counterexample."""
    gens = list(sibirsky_ideal(spec).generators)
    if not gens:
        return True
    return verify_buchberger_criterion(gens, DEGLEX)


def reversibility_ideal_IR(spec: SystemSpec) -> Ideal:
    """Twisted Sibirsky companion over Q(zeta): zeta^|v| [v] - [v^].

    Self-conjugate basis vectors contribute zero (their size is a multiple
    of n) and are dropped; generators are scaled monic and deduplicated.
    """
    field = cyclotomic_field(spec.n)
    ring = parameter_ring(spec, field)
    gens = []
    seen = set()
    for nu in spec_hilbert_basis(spec).vectors:
        if is_self_conjugate(spec, nu):
            continue
        unit = field.zeta(sum(nu) % spec.n)
        g = _normalized_binomial(ring, nu, involution(spec, nu), unit_plus=unit)
        if g is None or g in seen:
            continue
        seen.add(g)
        gens.append(g)
    return Ideal(ring, gens)


def lattice_ideal(basis_vectors, ring: PolyRing) -> Ideal:
    """Lattice ideal of the lattice spanned by the given signed vectors.

    Generated by x^(b+) - x^(b-) over the basis, then saturated by the
    product of all the variables."""
    gens = []
    for beta in basis_vectors:
        if len(beta) != ring.nvars:
            raise GroebnerError("lattice vector length mismatch")
        plus = tuple(e if e > 0 else 0 for e in beta)
        minus = tuple(-e if e < 0 else 0 for e in beta)
        g = ring.monomial(plus) - ring.monomial(minus)
        if g:
            gens.append(g)
    ideal = Ideal(ring, gens)
    if not gens:
        return ideal
    product = ring.monomial((1,) * ring.nvars)
    return saturate(ideal, product)


def _symmetry_elimination_ideal(spec: SystemSpec, field, zeta_power: int) -> Ideal:
    """Eliminate the scaling variables from the symmetry conditions.

    Adjoins alpha_1..alpha_n with alpha_1*...*alpha_n = 1; the relation both
    pins the product (part of the symmetry definition) and makes every alpha
    invertible, so clearing Laurent denominators is exact.  Adds
    zeta^zp * a_(k,i) * alpha^(shifted p) = a_(k,i+1) for all blocks and
    coordinates, and eliminates the alphas.
    """
    n = spec.n
    names = parameter_vars(spec)
    alphas = tuple(f"alpha{j + 1}" for j in range(n))
    head = alphas
    ring = PolyRing(head + names, field)
    gens = []
    prod = ring.one()
    for a in alphas:
        prod = prod * ring.var(a)
    gens.append(prod - ring.one())
    if zeta_power % n:
        factor = ring.constant(field.zeta(zeta_power % n))
    else:
        factor = ring.one()
    for k, p in enumerate(spec.exponents):
        q = p
        for i in range(n):
            lhs = factor * ring.var(names[k * n + i])
            rhs = ring.var(names[k * n + (i + 1) % n])
            for a, e in zip(alphas, q):
                if e > 0:
                    lhs = lhs * ring.var(a) ** e
                elif e < 0:
                    rhs = rhs * ring.var(a) ** (-e)
            gens.append(lhs - rhs)
            q = cyclic_shift(q)
    out = eliminate(Ideal(ring, gens), set(head))
    target = parameter_ring(spec, field)
    return Ideal(target, [g.substitute_names(target) for g in out.generators])


def _scaling_map_images(spec: SystemSpec, field, zeta_power: int):
    """Images of the parameters under the scaling parametrization.

    Block k, coordinate j maps to zeta^(j*zp) * y_k * t^(shifted p^(k)), with
    the last scaling variable aliased to the inverse of the others' product.
    """
    n = spec.n
    names = parameter_vars(spec)
    images = {}
    for k, p in enumerate(spec.exponents):
        q = p
        for j in range(n):
            exps = {f"y{k + 1}": 1}
            for i, e in enumerate(q):
                if e:
                    exps[f"t{i + 1}"] = e
            unit = field.zeta((j + 1) * zeta_power % n) if zeta_power % n else field.one()
            images[names[k * n + j]] = (unit, exps)
            q = cyclic_shift(q)
    if n > 1:
        images[f"t{n}"] = (field.one(), {f"t{i + 1}": -1 for i in range(n - 1)})
    return images


def equivariant_ideal(spec: SystemSpec, route: str = "elimination") -> Ideal:
    """Closure ideal of the equivariant systems, over Q.

    route="elimination" eliminates the scaling variables from the symmetry
    conditions; route="toric" computes the kernel of the scaling
    parametrization as a toric ideal.  The two agree.
    """
    if route == "elimination":
        return _symmetry_elimination_ideal(spec, QQ, 0)
    if route == "toric":
        ring = parameter_ring(spec, QQ)
        return toric_kernel(ring, _scaling_map_images(spec, QQ, 0))
    raise SpecError(f"unknown equivariant route {route!r}")


def zeta_reversible_ideal(spec: SystemSpec, route: str = "elimination") -> Ideal:
    """Closure ideal of the reversible systems, over Q(zeta).

    route="elimination" works as for the equivariant ideal but with the
    zeta factor in the symmetry conditions; route="zeta_toric" emits the
    weighted binomials w(b-)[b+] - w(b+)[b-] over a lattice basis of the
    lifted-matrix kernel and saturates by the product of all parameters.
    """
    field = cyclotomic_field(spec.n)
    if route == "elimination":
        return _symmetry_elimination_ideal(spec, field, 1)
    if route == "zeta_toric":
        ring = parameter_ring(spec, field)
        lifted, _ = A_matrices(spec)
        gens = []
        for beta in kernel_basis(lifted):
            plus = tuple(e if e > 0 else 0 for e in beta)
            minus = tuple(-e if e < 0 else 0 for e in beta)
            g = _normalized_binomial(
                ring,
                plus,
                minus,
                unit_plus=weight(spec, minus),
                unit_minus=weight(spec, plus),
            )
            if g:
                gens.append(g)
        ideal = Ideal(ring, gens)
        if not gens:
            return ideal
        product = ring.monomial((1,) * ring.nvars)
        return saturate(ideal, product)
    raise SpecError(f"unknown reversible route {route!r}")


def zeta_toric_map_kernel(spec: SystemSpec) -> Ideal:
    """Kernel of the root-of-unity-weighted scaling parametrization.

    A third, independent construction of the reversible ideal, used as a
    cross-check of the other two routes."""
    field = cyclotomic_field(spec.n)
    ring = parameter_ring(spec, field)
    return toric_kernel(ring, _scaling_map_images(spec, field, 1))


@dataclass(frozen=True)
class SaturationCheck:
    name: str
    left: Ideal
    right: Ideal
    equal: bool
    left_basis: GroebnerBasis
    right_basis: GroebnerBasis


@dataclass(frozen=True)
class SaturationReport:
    spec: SystemSpec
    checks: tuple

    @property
    def all_equal(self) -> bool:
        return all(c.equal for c in self.checks)


def _parameter_product(ring: PolyRing):
    return ring.monomial((1,) * ring.nvars)


def check_saturation_theorems(spec: SystemSpec) -> SaturationReport:
    """Verify the two saturation identities on a specification.

    Saturating the Sibirsky ideal by the product of all parameters must
    give the equivariant ideal, and saturating its twisted companion must
    give the reversible ideal.  Inequality signals an implementation bug
    and is reported, not raised."""
    checks = []

    sib = sibirsky_ideal(spec)
    equi = equivariant_ideal(spec, "elimination")
    left = saturate(sib, _parameter_product(sib.ring))
    checks.append(
        SaturationCheck(
            name="sibirsky_saturation_is_equivariant",
            left=left,
            right=equi,
            equal=ideal_equal(left, equi),
            left_basis=buchberger(left, DEGLEX),
            right_basis=buchberger(equi, DEGLEX),
        )
    )

    rev = reversibility_ideal_IR(spec)
    zeta = zeta_reversible_ideal(spec, "elimination")
    left = saturate(rev, _parameter_product(rev.ring))
    checks.append(
        SaturationCheck(
            name="twisted_saturation_is_reversible",
            left=left,
            right=zeta,
            equal=ideal_equal(left, zeta),
            left_basis=buchberger(left, DEGLEX),
            right_basis=buchberger(zeta, DEGLEX),
        )
    )
    return SaturationReport(spec, tuple(checks))


@dataclass(frozen=True)
class TwoDimReport:
    spec: SystemSpec
    sibirsky: Ideal
    toric: Ideal
    lattice: Ideal
    sibirsky_equals_toric: bool
    sibirsky_equals_lattice: bool
    disjoint_support: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.sibirsky_equals_toric
            and self.sibirsky_equals_lattice
            and self.disjoint_support
        )


def two_dim_crosschecks(spec: SystemSpec) -> TwoDimReport:
    """Planar identities: the Sibirsky ideal equals both the kernel of the
    two-variable scaling map and the lattice ideal of the conjugation
    differences, and every reduced Sibirsky binomial has support-disjoint
    monomials."""
    if spec.n != 2:
        raise SpecError("planar cross-checks require n = 2")
    names = parameter_vars(spec)
    ring = PolyRing(names, QQ)
    ell = spec.ell

    sib = sibirsky_ideal(spec)

    images = {}
    for s, (p, q) in enumerate(spec.exponents, start=1):
        a_name = names[(s - 1) * 2]
        b_name = names[(s - 1) * 2 + 1]
        images[a_name] = (1, {f"y{s}": 1, "t": q - p})
        images[b_name] = (1, {f"y{2 * ell - s + 1}": 1, "t": p - q})
    for s in range(1, ell + 1):
        high = 2 * ell - s + 1
        if high > ell:
            images[f"y{high}"] = (1, {f"y{s}": 1})
    toric = toric_kernel(ring, images)

    basis_vectors = []
    for nu in spec_hilbert_basis(spec).vectors:
        delta = tuple(a - b for a, b in zip(nu, involution(spec, nu)))
        if any(delta):
            basis_vectors.append(delta)
    lattice = lattice_ideal(basis_vectors, ring)

    disjoint = True
    if sib.generators:
        for g in buchberger(sib, DEGLEX).elements:
            if len(g.terms) != 2:
                disjoint = False
                break
            m1, m2 = g.terms
            if any(a and b for a, b in zip(m1, m2)):
                disjoint = False
                break

    return TwoDimReport(
        spec=spec,
        sibirsky=sib,
        toric=toric,
        lattice=lattice,
        sibirsky_equals_toric=ideal_equal(sib, toric),
        sibirsky_equals_lattice=ideal_equal(sib, lattice),
        disjoint_support=disjoint,
    )
