"""Buchberger-based Groebner engine over Q and Q(zeta_n).

Provides multivariate division, reduced Groebner bases, elimination via
block orders, saturation by the inverse-variable trick, ideal equality
through canonical reduced bases, subalgebra membership with tag variables,
and kernels of monomial maps with unit coefficients (toric-style ideals,
Laurent variables handled by adjoining inverse partners).

The engine is deterministic: pair selection uses the normal strategy
(minimal lcm degree, then first index), and every emitted basis is the
unique reduced Groebner basis for its order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .multipoly import (
    DEGLEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    block_order,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class GroebnerError(ValueError):
    pass


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal: ring plus generator list (zeros dropped)."""

    ring: PolyRing
    generators: tuple

    def __init__(self, ring: PolyRing, generators):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                raise GroebnerError("ideal generators must be polynomials")
            if g.ring != ring:
                raise GroebnerError("generator ring mismatch")
            if g:
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def is_zero(self) -> bool:
        return not self.generators


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, autoreduced, ascending leading terms."""

    ring: PolyRing
    order: MonomialOrder
    elements: tuple


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGLEX) -> Polynomial:
    lf = f.leading_monomial(order)
    lg = g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    field = f.ring.field
    cf = field.inv(f.terms[lf])
    cg = field.inv(g.terms[lg])
    left = f * cf * f.ring.monomial(mono_div(lcm, lf))
    right = g * cg * g.ring.monomial(mono_div(lcm, lg))
    return left - right


def reduce(f: Polynomial, basis, order: MonomialOrder = DEGLEX) -> Polynomial:
    """Full normal form of f modulo a polynomial list.

    No term of the remainder is divisible by any basis leading monomial,
    and f minus the remainder lies in the ideal generated by the basis.
    """
    reducers = []
    for g in basis:
        if g.ring != f.ring:
            raise GroebnerError("reduction basis ring mismatch")
        if g:
            lm = g.leading_monomial(order)
            reducers.append((lm, g.terms[lm], g.terms))
    remainder = _reduce_terms(dict(f.terms), reducers, f.ring, order)
    return Polynomial(f.ring, remainder)


def _reduce_terms(work: dict, reducers, ring: PolyRing, order: MonomialOrder) -> dict:
    key = order.key
    remainder = {}
    while work:
        mono = max(work, key=key)
        coeff = work.pop(mono)
        hit = None
        for lm, lc, terms in reducers:
            if mono_divides(lm, mono):
                hit = (lm, lc, terms)
                break
        if hit is None:
            remainder[mono] = coeff
            continue
        lm, lc, terms = hit
        shift = mono_div(mono, lm)
        factor = coeff / lc
        for gm, gc in terms.items():
            if gm == lm:
                continue
            target = mono_mul(gm, shift)
            acc = work.get(target)
            delta = factor * gc
            acc = -delta if acc is None else acc - delta
            if acc:
                work[target] = acc
            else:
                work.pop(target, None)
    return remainder


def buchberger(ideal_or_gens, order: MonomialOrder = DEGLEX) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Pair selection: minimal lcm total degree, then first index.  Pairs with
    coprime leading monomials are discarded, and the chain criterion prunes
    pairs whose lcm is covered by an already-treated third element.
    """
    if isinstance(ideal_or_gens, Ideal):
        ring = ideal_or_gens.ring
        gens = list(ideal_or_gens.generators)
    else:
        gens = [g for g in ideal_or_gens if g]
        if not gens:
            raise GroebnerError("cannot infer ring from an empty generator list")
        ring = gens[0].ring
    if not gens:
        return GroebnerBasis(ring, order, ())

    key = order.key
    basis = []          # monic polynomials
    lms = []            # their leading monomials
    pending = []        # heap of (lcm degree, i, j)
    treated = set()

    def append(poly: Polynomial):
        poly = poly.monic(order)
        lm = poly.leading_monomial(order)
        j = len(basis)
        basis.append(poly)
        lms.append(lm)
        for i in range(j):
            heapq.heappush(pending, (sum(mono_lcm(lms[i], lm)), i, j))

    for g in gens:
        append(g)

    while pending:
        _, i, j = heapq.heappop(pending)
        if (i, j) in treated:
            continue
        treated.add((i, j))
        li, lj = lms[i], lms[j]
        lcm = mono_lcm(li, lj)
        if lcm == mono_mul(li, lj):       # coprime leading monomials
            continue
        chained = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if (
                mono_divides(lms[k], lcm)
                and (min(i, k), max(i, k)) in treated
                and (min(j, k), max(j, k)) in treated
            ):
                chained = True
                break
        if chained:
            continue
        s = s_polynomial(basis[i], basis[j], order)
        reducers = [(lm, b.terms[lm], b.terms) for lm, b in zip(lms, basis)]
        remainder = _reduce_terms(dict(s.terms), reducers, ring, order)
        if remainder:
            append(Polynomial(ring, remainder))

    # Minimalize: keep only elements whose leading monomial is not divisible
    # by another kept leading monomial (ascending scan).
    indexed = sorted(range(len(basis)), key=lambda t: key(lms[t]))
    kept = []
    kept_lms = []
    for t in indexed:
        lm = lms[t]
        if any(mono_divides(other, lm) for other in kept_lms):
            continue
        kept.append(basis[t])
        kept_lms.append(lm)

    # Tail-reduce each element against the others; leading monomials are
    # pairwise indivisible so they survive and the result is the unique
    # reduced basis.
    reduced = list(kept)
    for idx in range(len(reduced)):
        others = [reduced[t] for t in range(len(reduced)) if t != idx]
        reduced[idx] = reduce(reduced[idx], others, order).monic(order)
    reduced.sort(key=lambda g: key(g.leading_monomial(order)))
    return GroebnerBasis(ring, order, tuple(reduced))


def verify_buchberger_criterion(polys, order: MonomialOrder = DEGLEX) -> bool:
    """Check that every S-polynomial of the list reduces to zero against it."""
    polys = [g for g in polys if g]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if reduce(s_polynomial(polys[i], polys[j], order), polys, order):
                return False
    return True


def ideal_member(f: Polynomial, ideal: Ideal, order: MonomialOrder = DEGLEX) -> bool:
    if f.ring != ideal.ring:
        raise GroebnerError("ring mismatch in membership test")
    if not f:
        return True
    basis = buchberger(ideal, order)
    return not reduce(f, basis.elements, order)


def ideal_equal(left: Ideal, right: Ideal) -> bool:
    """Equality of ideals: identical reduced bases under the canonical deglex."""
    if left.ring != right.ring:
        raise GroebnerError("cannot compare ideals in different rings")
    if not left.generators and not right.generators:
        return True
    if not left.generators or not right.generators:
        # one side is the zero ideal; the other must have no nonzero generator
        return not left.generators and not right.generators
    gb_left = buchberger(left, DEGLEX)
    gb_right = buchberger(right, DEGLEX)
    return list(gb_left.elements) == list(gb_right.elements)


def _fresh_names(base: str, count: int, taken) -> list:
    names = []
    taken = set(taken)
    for i in range(count):
        name = f"{base}{i + 1}" if count > 1 else base
        while name in taken:
            name = "_" + name
        taken.add(name)
        names.append(name)
    return names


def _block_elim_order(head: int, tail: int) -> MonomialOrder:
    if head == 0:
        return DEGLEX
    if tail == 0:
        return DEGLEX
    return block_order(("deglex", head), ("deglex", tail))


def eliminate(ideal: Ideal, drop) -> Ideal:
    """Generators of the ideal intersected with the subring without `drop`,
    via a block elimination order with the dropped variables in front."""
    drop = set(drop)
    ring = ideal.ring
    unknown = drop - set(ring.variables)
    if unknown:
        raise GroebnerError(f"cannot drop unknown variables {sorted(unknown)}")
    drop_vars = tuple(v for v in ring.variables if v in drop)
    keep_vars = tuple(v for v in ring.variables if v not in drop)
    keep_ring = PolyRing(keep_vars, ring.field)
    if not drop_vars:
        return Ideal(keep_ring, list(ideal.generators))
    big_ring = PolyRing(drop_vars + keep_vars, ring.field)
    order = _block_elim_order(len(drop_vars), len(keep_vars))
    lifted = [g.substitute_names(big_ring) for g in ideal.generators]
    if not lifted:
        return Ideal(keep_ring, [])
    basis = buchberger(Ideal(big_ring, lifted), order)
    cutoff = len(drop_vars)
    survivors = [
        g for g in basis.elements if all(m[:cutoff] == (0,) * cutoff for m in g.terms)
    ]
    return Ideal(keep_ring, [g.substitute_names(keep_ring) for g in survivors])


def saturate(ideal: Ideal, f: Polynomial) -> Ideal:
    """Saturation I : f^infinity, by adjoining u with u*f - 1 and eliminating u."""
    if f.ring != ideal.ring:
        raise GroebnerError("saturation polynomial ring mismatch")
    if not f:
        raise GroebnerError("cannot saturate by the zero polynomial")
    ring = ideal.ring
    (u_name,) = _fresh_names("usat", 1, ring.variables)
    big_ring = PolyRing((u_name,) + ring.variables, ring.field)
    lifted = [g.substitute_names(big_ring) for g in ideal.generators]
    lifted.append(big_ring.var(u_name) * f.substitute_names(big_ring) - big_ring.one())
    out = eliminate(Ideal(big_ring, lifted), {u_name})
    return Ideal(ring, [g.substitute_names(ring) for g in out.generators])


@dataclass(frozen=True)
class SubalgebraMembership:
    member: bool
    representation: Polynomial | None = None
    tag_map: tuple = ()


class SubalgebraTester:
    """Membership in the subalgebra generated by a fixed polynomial list.

    Tag-variable method: one Groebner basis of {g_i - u_i} under an
    elimination order with the original variables in front answers any
    number of queries; f lies in the subalgebra iff its normal form
    contains tag variables only, and that normal form read in the tags is
    a representation of f in the g_i.
    """

    def __init__(self, gens):
        gens = list(gens)
        if not gens:
            raise GroebnerError("need at least one subalgebra generator")
        ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise GroebnerError("subalgebra generator ring mismatch")
        tags = _fresh_names("u", max(len(gens), 2), ring.variables)[: len(gens)]
        self.ring = ring
        self.gens = gens
        self.tags = tags
        self.tag_ring = PolyRing(tuple(tags), ring.field)
        self.big_ring = PolyRing(ring.variables + tuple(tags), ring.field)
        self.order = _block_elim_order(ring.nvars, len(tags))
        relations = [
            g.substitute_names(self.big_ring) - self.big_ring.var(t)
            for g, t in zip(gens, tags)
        ]
        self.basis = buchberger(Ideal(self.big_ring, relations), self.order)

    def member(self, f: Polynomial) -> SubalgebraMembership:
        if f.ring != self.ring:
            raise GroebnerError("ring mismatch in subalgebra membership test")
        nf = reduce(f.substitute_names(self.big_ring), self.basis.elements, self.order)
        cutoff = self.ring.nvars
        if any(m[:cutoff] != (0,) * cutoff for m in nf.terms):
            return SubalgebraMembership(False)
        representation = nf.substitute_names(self.tag_ring)
        return SubalgebraMembership(
            True, representation, tuple(zip(self.tags, self.gens))
        )


def subalgebra_member(f: Polynomial, gens) -> SubalgebraMembership:
    """Decide membership of f in the subalgebra generated by `gens`."""
    gens = list(gens)
    if not gens:
        ring = f.ring
        tag_ring = PolyRing((), ring.field)
        if f.is_constant():
            value = f.terms.get((0,) * ring.nvars, ring.field.zero())
            return SubalgebraMembership(True, tag_ring.constant(value), ())
        return SubalgebraMembership(False)
    return SubalgebraTester(gens).member(f)


def toric_kernel(ring: PolyRing, images: dict) -> Ideal:
    """Kernel of a monomial map with unit coefficients.

    ``images`` maps each ring variable to (unit, {auxiliary name: exponent});
    extra keys are aliases that other images may reference and are resolved
    by substitution before the kernel is computed.  Negative exponents are
    Laurent: each such auxiliary gets an inverse partner s with t*s - 1,
    and all auxiliaries are eliminated.
    """
    field = ring.field
    resolved = {}
    for name, (unit, exps) in images.items():
        resolved[name] = (
            field.coerce(unit),
            {a: int(e) for a, e in exps.items() if int(e)},
        )
    alias_names = set(resolved) - set(ring.variables)
    for v in ring.variables:
        if v not in resolved:
            raise GroebnerError(f"no image given for variable {v!r}")

    # Substitute aliases until every image references raw auxiliaries only.
    for _ in range(len(resolved) + 1):
        changed = False
        for name, (unit, exps) in list(resolved.items()):
            hit = [a for a in exps if a in alias_names]
            if not hit:
                continue
            changed = True
            new_unit = unit
            new_exps = {a: e for a, e in exps.items() if a not in alias_names}
            for a in hit:
                e = exps[a]
                a_unit, a_exps = resolved[a]
                if a in a_exps:
                    raise GroebnerError(f"alias {a!r} refers to itself")
                new_unit = new_unit * a_unit**e
                for b, be in a_exps.items():
                    new_exps[b] = new_exps.get(b, 0) + e * be
            resolved[name] = (new_unit, {b: be for b, be in new_exps.items() if be})
        if not changed:
            break
    else:
        raise GroebnerError("cyclic alias definitions in toric map")

    aux = set()
    for v in ring.variables:
        unit, exps = resolved[v]
        if not unit:
            raise GroebnerError(f"zero unit coefficient in image of {v!r}")
        aux.update(exps)
    overlap = aux & set(ring.variables)
    if overlap:
        raise GroebnerError(f"auxiliary names collide with ring variables: {sorted(overlap)}")
    aux = sorted(aux)
    needs_inverse = {
        a for a in aux
        for v in ring.variables
        if resolved[v][1].get(a, 0) < 0
    }
    partners = {}
    taken = set(aux) | set(ring.variables)
    for a in sorted(needs_inverse):
        inv = a + "_inv"
        while inv in taken:
            inv = "_" + inv
        taken.add(inv)
        partners[a] = inv

    head = []
    for a in aux:
        head.append(a)
        if a in partners:
            head.append(partners[a])
    big_ring = PolyRing(tuple(head) + ring.variables, field)
    order = _block_elim_order(len(head), ring.nvars)

    gens = []
    for v in ring.variables:
        unit, exps = resolved[v]
        image = big_ring.constant(unit)
        for a, e in sorted(exps.items()):
            if e > 0:
                image = image * big_ring.var(a) ** e
            elif e < 0:
                image = image * big_ring.var(partners[a]) ** (-e)
        gens.append(big_ring.var(v) - image)
    for a, inv in sorted(partners.items()):
        gens.append(big_ring.var(a) * big_ring.var(inv) - big_ring.one())

    out = eliminate(Ideal(big_ring, gens), set(head))
    return Ideal(ring, [g.substitute_names(ring) for g in out.generators])
