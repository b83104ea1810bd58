"""Rack bialgebras and their augmented refinements.

A rack bialgebra is a counital coaugmented coalgebra together with a
product ``a |> b`` that is a coalgebra morphism, fixes the coaugmentation
from the left, collapses it from the right, and is self-distributive:

    1 |> a = a,    a |> 1 = eps(a) 1,
    a |> (b |> c) = sum_(a) (a1 |> b) |> (a2 |> c).

The product is in general neither associative nor unital.  An augmented
structure factors it through a Hopf algebra acting on the carrier,
``a |> b = phi(a).b``, which upgrades self-distributivity to genuine
module identities.  Certification is exhaustive over basis labels; by
multilinearity that is equivalent to the identities holding everywhere.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from rackalg.env_hopf import EnvelopingHopf, enveloping_hopf, module_action, phi_map
from rackalg.errors import (
    AxiomViolation,
    DecompositionFailure,
    DegreeCapExceeded,
    GaugeEquivarianceViolation,
    RackalgError,
    SchemaError,
)
from rackalg.exact_core import (
    Basis,
    FinMap,
    FinVec,
    Label,
    SpanSolver,
    merge_labels,
    split_label,
    tensor_basis,
    tensor_product_map,
)
from rackalg.groups import FiniteGroup, GroupHopf, group_hopf, group_like_coalgebra
from rackalg.leibniz import LeibnizAlgebra, check_leibniz, left_center, quotient_lie
from rackalg.symcoalg import (
    Coalgebra,
    check_coalgebra,
    coalgebra_filtration,
    is_cocommutative,
    primitives,
    symmetric_coalgebra,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a property check: what passed, how much was covered."""

    passed: bool
    checked: int
    axiom: str = ""
    witness: tuple = ()
    detail: str = ""


# ---------------------------------------------------------------------------
# finite racks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteRack:
    """Pointed rack on a finite set: tables for x |> y and for the inverse
    of each left multiplication.

    Construction validates shapes only; :func:`check_rack` verifies the
    unit and self-distributivity laws, so broken tables can be built for
    negative tests.
    """

    name: str
    elements: tuple[str, ...]
    unit: str
    op: Mapping[tuple[str, str], str]
    left_mult_inverse: Mapping[tuple[str, str], str]

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise SchemaError(f"rack {self.name}: duplicate elements")
        if self.unit not in self.elements:
            raise SchemaError(f"rack {self.name}: unit {self.unit!r} is not an element")
        for x, y in itertools.product(self.elements, repeat=2):
            if (x, y) not in self.op:
                raise SchemaError(f"rack {self.name}: missing product {x!r} |> {y!r}")
            if self.op[(x, y)] not in self.elements:
                raise SchemaError(f"rack {self.name}: product {x!r} |> {y!r} escapes")
        for (x, y), v in self.op.items():
            if self.left_mult_inverse.get((x, v)) != y:
                raise SchemaError(f"rack {self.name}: left inverse table wrong at ({x!r}, {v!r})")

    @staticmethod
    def build(name: str, elements: Sequence[str], unit: str,
              op: Mapping[tuple[str, str], str]) -> "FiniteRack":
        """Derive the inverse table; fails when some row is not a bijection."""
        inverse: dict[tuple[str, str], str] = {}
        for x in elements:
            row = [op[(x, y)] for y in elements]
            if sorted(row) != sorted(elements):
                raise AxiomViolation("left multiplication bijectivity", (x,), tuple(row), None)
            for y in elements:
                inverse[(x, op[(x, y)])] = y
        return FiniteRack(name, tuple(elements), unit, dict(op), inverse)

    def apply(self, x: str, y: str) -> str:
        return self.op[(x, y)]


def check_rack(x: FiniteRack) -> None:
    """Unit laws and self-distributivity on every triple."""
    for y in x.elements:
        if x.apply(x.unit, y) != y:
            raise AxiomViolation("rack left unit", (y,), x.apply(x.unit, y), y)
        if x.apply(y, x.unit) != x.unit:
            raise AxiomViolation("rack unit absorption", (y,), x.apply(y, x.unit), x.unit)
    for a, b, c in itertools.product(x.elements, repeat=3):
        lhs = x.apply(a, x.apply(b, c))
        rhs = x.apply(x.apply(a, b), x.apply(a, c))
        if lhs != rhs:
            raise AxiomViolation("rack self-distributivity", (a, b, c), lhs, rhs)


def conjugation_rack(g: FiniteGroup) -> FiniteRack:
    """The group as a pointed rack under x |> y = x y x^-1."""
    op = {(a, b): g.conjugate(a, b) for a in g.elements for b in g.elements}
    rack = FiniteRack.build(f"Conj({g.name})", g.elements, g.unit, op)
    check_rack(rack)
    return rack


# ---------------------------------------------------------------------------
# rack bialgebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RackBialgebra:
    """Coalgebra carrier plus the product mu on the tensor square.

    ``certified`` is set only by :func:`certify`.
    """

    carrier: Coalgebra
    mu: FinMap
    certified: bool = False

    @property
    def basis(self) -> Basis:
        return self.carrier.basis

    def apply(self, a: FinVec, b: FinVec) -> FinVec:
        return self.mu(a.tensor(b, self.mu.domain))


def certify(rb: RackBialgebra) -> RackBialgebra:
    """Run the complete axiom suite; returns a copy with ``certified`` set.

    The carrier is checked as a coalgebra, then the product is checked to
    be a coalgebra morphism, to fix the coaugmentation from the left and
    collapse it from the right, and to be self-distributive on every basis
    triple.
    """
    c = rb.carrier
    basis = c.basis
    square = c.square
    if rb.mu.domain != square or rb.mu.codomain != basis:
        raise SchemaError(f"product of {basis.name} must map its tensor square to itself")
    check_coalgebra(c)

    prod: dict[tuple[Label, Label], FinVec] = {}
    for la in basis.labels:
        for lb in basis.labels:
            prod[(la, lb)] = rb.mu.column(merge_labels(basis, la, lb))
    sweedlers = {lab: c.sweedler(FinVec.unit(basis, lab)) for lab in basis.labels}
    eps = {lab: c.counit.get(lab, ZERO) for lab in basis.labels}

    def prod_vec(a: FinVec, b: FinVec) -> FinVec:
        out = FinVec.zero(basis)
        for la, ca in a.entries.items():
            for lb, cb in b.entries.items():
                out = out + prod[(la, lb)].scale(ca * cb)
        return out

    one = c.unit
    got = prod_vec(one, one)
    if got != one:
        raise AxiomViolation("unit square", "1", got, one)
    for lab in basis.labels:
        a = FinVec.unit(basis, lab)
        lhs = prod_vec(one, a)
        if lhs != a:
            raise AxiomViolation("left unit", lab, lhs, a)
        lhs = prod_vec(a, one)
        rhs = one.scale(eps[lab])
        if lhs != rhs:
            raise AxiomViolation("unit absorption", lab, lhs, rhs)
    for la in basis.labels:
        for lb in basis.labels:
            got_eps = c.eps_of(prod[(la, lb)])
            want_eps = eps[la] * eps[lb]
            if got_eps != want_eps:
                raise AxiomViolation("counit multiplicativity", (la, lb), got_eps, want_eps)
            lhs2 = c.delta(prod[(la, lb)])
            rhs2 = FinVec.zero(square)
            for a1, a2, ca in sweedlers[la]:
                for b1, b2, cb in sweedlers[lb]:
                    rhs2 = rhs2 + prod[(a1, b1)].tensor(prod[(a2, b2)], square).scale(ca * cb)
            if lhs2 != rhs2:
                raise AxiomViolation("coproduct multiplicativity", (la, lb), lhs2, rhs2)
    for la in basis.labels:
        ea = FinVec.unit(basis, la)
        for lb in basis.labels:
            for lc in basis.labels:
                lhs = prod_vec(ea, prod[(lb, lc)])
                rhs = FinVec.zero(basis)
                for a1, a2, ca in sweedlers[la]:
                    rhs = rhs + prod_vec(prod[(a1, lb)], prod[(a2, lc)]).scale(ca)
                if lhs != rhs:
                    raise AxiomViolation("self-distributivity", (la, lb, lc), lhs, rhs)
    return dataclasses.replace(rb, certified=True)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def trivial(carrier: Coalgebra) -> RackBialgebra:
    """The left-trivial product a |> b = eps(a) b on any coalgebra."""
    basis = carrier.basis

    def col(pair: Label) -> FinVec:
        la, lb = split_label(basis, pair)
        e = carrier.counit.get(la, ZERO)
        return FinVec.unit(basis, lb).scale(e) if e else FinVec.zero(basis)

    mu = FinMap.from_function(carrier.square, basis, col)
    return certify(RackBialgebra(carrier, mu))


def rack_group_algebra(x: FiniteRack) -> RackBialgebra:
    """The rack algebra of a finite rack: set-like basis, linearized table."""
    coalg = group_like_coalgebra(f"K[{x.name}]", x.elements, x.unit)
    basis = coalg.basis

    def col(pair: Label) -> FinVec:
        la, lb = split_label(basis, pair)
        return FinVec.unit(basis, x.op[(la, lb)])

    mu = FinMap.from_function(coalg.square, basis, col)
    return certify(RackBialgebra(coalg, mu))


def ur(h: LeibnizAlgebra) -> RackBialgebra:
    """The unital rack bialgebra on K + h.

    Primitives multiply by the bracket, the coaugmentation acts as left
    unit and is absorbed on the right:
    (l 1 + x) |> (l' 1 + x') = l l' 1 + l x' + [x, x'].
    """
    check_leibniz(h)
    carrier = symmetric_coalgebra(h.basis, 1, name=f"UR({h.basis.name})")
    basis = carrier.basis

    def col(pair: Label) -> FinVec:
        la, lb = split_label(basis, pair)
        assert isinstance(la, tuple) and isinstance(lb, tuple)
        if not la:
            return FinVec.unit(basis, lb)
        if not lb:
            return FinVec.zero(basis)
        v = h.bracket_of_labels(la[0], lb[0])
        return FinVec.build(basis, (((i,), c) for i, c in v.entries.items()))

    mu = FinMap.from_function(carrier.square, basis, col)
    return certify(RackBialgebra(carrier, mu))


def gauge(rb: RackBialgebra, f: FinMap) -> RackBialgebra:
    """The f-gauge: same coalgebra, product (a, b) -> f(a) |> b.

    f must be a coalgebra endomorphism fixing the coaugmentation and
    commuting with every left multiplication.
    """
    c = rb.carrier
    basis = c.basis
    if f.domain != basis or f.codomain != basis:
        raise SchemaError("gauge map must be an endomorphism of the carrier")
    if f(c.unit) != c.unit:
        raise AxiomViolation("gauge fixes coaugmentation", "1", f(c.unit), c.unit)
    lhs_map = c.delta.compose(f)
    rhs_map = tensor_product_map(f, f).compose(c.delta)
    for lab in basis.labels:
        if lhs_map.column(lab) != rhs_map.column(lab):
            raise AxiomViolation("gauge comultiplicativity", lab,
                                 lhs_map.column(lab), rhs_map.column(lab))
        if c.eps_of(f.column(lab)) != c.counit.get(lab, ZERO):
            raise AxiomViolation("gauge counit", lab,
                                 c.eps_of(f.column(lab)), c.counit.get(lab, ZERO))
    for la in basis.labels:
        ea = FinVec.unit(basis, la)
        for lb in basis.labels:
            lhs = f(rb.mu.column(merge_labels(basis, la, lb)))
            rhs = rb.apply(ea, f.column(lb))
            if lhs != rhs:
                raise GaugeEquivarianceViolation(
                    f"f(a |> b) != a |> f(b) at basis pair ({la!r}, {lb!r})")
    mu_f = rb.mu.compose(tensor_product_map(f, FinMap.identity(basis)))
    return certify(RackBialgebra(c, mu_f))


def adjoint_action(hopf, u: FinVec, v: FinVec) -> FinVec:
    """ad_u(v) = sum u1 v S(u2) in a cocommutative Hopf algebra.

    Group elements act by conjugation.  A PBW word acts by folding its
    letters as commutators, rightmost letter first; each letter only needs
    one degree of headroom because commutators preserve filtration degree.
    """
    if isinstance(hopf, GroupHopf):
        out = FinVec.zero(hopf.basis)
        for g, cg in u.entries.items():
            for x, cx in v.entries.items():
                out = out + FinVec.unit(hopf.basis, hopf.group.conjugate(g, x)).scale(cg * cx)
        return out
    out = FinVec.zero(hopf.basis)
    for word, cu in u.entries.items():
        assert isinstance(word, tuple)
        acc = v
        for lab in reversed(word):
            letter = FinVec.unit(hopf.basis, (lab,))
            acc = hopf.product(letter, acc) - hopf.product(acc, letter)
        out = out + acc.scale(cu)
    return out


def hopf_adjoint(hopf, degree: int | None = None) -> RackBialgebra:
    """The adjoint rack bialgebra h |> h' = sum h1 h' S(h2) on a
    cocommutative Hopf algebra.

    For a capped enveloping algebra the carrier is truncated one degree
    below the cap so that every commutator stays representable.
    """
    if isinstance(hopf, GroupHopf):
        c = hopf.coalgebra
        basis = c.basis

        def gcol(pair: Label) -> FinVec:
            la, lb = split_label(basis, pair)
            return FinVec.unit(basis, hopf.group.conjugate(la, lb))

        return certify(RackBialgebra(c, FinMap.from_function(c.square, basis, gcol)))

    k = hopf.cap - 1 if degree is None else degree
    if k + 1 > hopf.cap:
        raise DegreeCapExceeded(k + 1, hopf.cap, "adjoint rack needs one degree of headroom")
    carrier = symmetric_coalgebra(hopf.lie.basis, k, name=f"Ad({hopf.basis.name})<={k}")
    basis = carrier.basis

    def col(pair: Label) -> FinVec:
        wa, wb = split_label(basis, pair)
        v = adjoint_action(hopf, FinVec.unit(hopf.basis, wa), FinVec.unit(hopf.basis, wb))
        assert all(lab in basis for lab in v.entries)
        return FinVec.build(basis, v.entries)

    return certify(RackBialgebra(carrier, FinMap.from_function(carrier.square, basis, col)))


# ---------------------------------------------------------------------------
# augmented rack bialgebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AugmentedRackBialgebra:
    """Rack bialgebra presented through a Hopf algebra action.

    ``phi`` maps the carrier into the Hopf algebra as coalgebras; the
    action makes the carrier a module coalgebra; the induced product is
    a |> b = phi(a).b.
    """

    rack: RackBialgebra
    hopf: object
    phi: FinMap
    action: FinMap
    certified: bool = False

    @property
    def carrier(self) -> Coalgebra:
        return self.rack.carrier

    def act(self, u: FinVec, a: FinVec) -> FinVec:
        return self.action(u.tensor(a, self.action.domain))


def _h_deg(hopf, lab: Label) -> int:
    return len(lab) if isinstance(hopf, EnvelopingHopf) else 0


def _value_degree(hopf, v: FinVec) -> int:
    if isinstance(hopf, EnvelopingHopf):
        return max((len(w) for w in v.entries), default=0)
    return 0


def _fits(hopf, degree: int) -> bool:
    return degree <= hopf.cap if isinstance(hopf, EnvelopingHopf) else True


def certify_augmented(arb: AugmentedRackBialgebra) -> AugmentedRackBialgebra:
    """Full axiom suite for the augmented structure and its induced rack.

    Identities whose verification would need Hopf products beyond a capped
    envelope's degree budget are restricted to the pairs that fit; all
    carrier-side checks are exhaustive.
    """
    bc = arb.carrier
    hopf = arb.hopf
    hc = hopf.coalgebra
    phi = arb.phi
    mixed = tensor_basis(hc.basis, bc.basis)
    if phi.domain != bc.basis or phi.codomain != hc.basis:
        raise SchemaError("phi must map the carrier into the Hopf algebra")
    if arb.action.domain != mixed or arb.action.codomain != bc.basis:
        raise SchemaError("action must map hopf (x) carrier into the carrier")
    check_coalgebra(bc)
    check_coalgebra(hc)

    def unit_h(lab: Label) -> FinVec:
        return FinVec.unit(hc.basis, lab)

    def unit_b(lab: Label) -> FinVec:
        return FinVec.unit(bc.basis, lab)

    lhs_map = hc.delta.compose(phi)
    rhs_map = tensor_product_map(phi, phi).compose(bc.delta)
    for lab in bc.basis.labels:
        if lhs_map.column(lab) != rhs_map.column(lab):
            raise AxiomViolation("augmentation comultiplicativity", lab,
                                 lhs_map.column(lab), rhs_map.column(lab))
        got_eps = hc.eps_of(phi.column(lab))
        want_eps = bc.counit.get(lab, ZERO)
        if got_eps != want_eps:
            raise AxiomViolation("augmentation counit", lab, got_eps, want_eps)
    if phi(bc.unit) != hc.unit:
        raise AxiomViolation("augmentation coaugmentation", "1", phi(bc.unit), hc.unit)

    for la in bc.basis.labels:
        a = unit_b(la)
        got = arb.act(hc.unit, a)
        if got != a:
            raise AxiomViolation("action unit", la, got, a)
    for lh in hc.basis.labels:
        got = arb.act(unit_h(lh), bc.unit)
        want = bc.unit.scale(hc.counit.get(lh, ZERO))
        if got != want:
            raise AxiomViolation("action fixes coaugmentation", lh, got, want)

    for lu in hc.basis.labels:
        for lv in hc.basis.labels:
            if not _fits(hopf, _h_deg(hopf, lu) + _h_deg(hopf, lv)):
                continue
            uv = hopf.product(unit_h(lu), unit_h(lv))
            for la in bc.basis.labels:
                a = unit_b(la)
                lhs = arb.act(uv, a)
                rhs = arb.act(unit_h(lu), arb.act(unit_h(lv), a))
                if lhs != rhs:
                    raise AxiomViolation("action associativity", (lu, lv, la), lhs, rhs)

    square_b = bc.square
    for lh in hc.basis.labels:
        hsw = hc.sweedler(unit_h(lh))
        eps_h = hc.counit.get(lh, ZERO)
        for la in bc.basis.labels:
            v = arb.act(unit_h(lh), unit_b(la))
            lhs = bc.delta(v)
            rhs = FinVec.zero(square_b)
            for h1, h2, ch in hsw:
                for a1, a2, ca in bc.sweedler(unit_b(la)):
                    rhs = rhs + arb.act(unit_h(h1), unit_b(a1)).tensor(
                        arb.act(unit_h(h2), unit_b(a2)), square_b).scale(ch * ca)
            if lhs != rhs:
                raise AxiomViolation("action comultiplicativity", (lh, la), lhs, rhs)
            got_eps = bc.eps_of(v)
            want_eps = eps_h * bc.counit.get(la, ZERO)
            if got_eps != want_eps:
                raise AxiomViolation("action counit", (lh, la), got_eps, want_eps)

    for lh in hc.basis.labels:
        u = unit_h(lh)
        for la in bc.basis.labels:
            pa = phi.column(la)
            if not _fits(hopf, _value_degree(hopf, pa) + 1):
                continue
            lhs = phi(arb.act(u, unit_b(la)))
            rhs = adjoint_action(hopf, u, pa)
            if lhs != rhs:
                raise AxiomViolation("augmentation intertwines adjoint", (lh, la), lhs, rhs)

    for la in bc.basis.labels:
        pa = phi.column(la)
        for lb in bc.basis.labels:
            want = arb.act(pa, unit_b(lb))
            got = arb.rack.mu.column(merge_labels(bc.basis, la, lb))
            if got != want:
                raise AxiomViolation("induced product", (la, lb), got, want)

    anti = hopf.antipode_map()
    for la in bc.basis.labels:
        asw = bc.sweedler(unit_b(la))
        eps_a = bc.counit.get(la, ZERO)
        for lb in bc.basis.labels:
            b = unit_b(lb)
            want = b.scale(eps_a)
            acc1 = FinVec.zero(bc.basis)
            acc2 = FinVec.zero(bc.basis)
            for a1, a2, ca in asw:
                acc1 = acc1 + arb.rack.apply(
                    unit_b(a1), arb.act(anti(phi.column(a2)), b)).scale(ca)
                acc2 = acc2 + arb.act(
                    anti(phi.column(a1)), arb.rack.apply(unit_b(a2), b)).scale(ca)
            if acc1 != want:
                raise AxiomViolation("left regularity", (la, lb), acc1, want)
            if acc2 != want:
                raise AxiomViolation("left regularity flipped", (la, lb), acc2, want)

    rack = certify(arb.rack)
    return dataclasses.replace(arb, rack=rack, certified=True)


def augmented_from_action(carrier: Coalgebra, hopf, phi: FinMap,
                          action: FinMap) -> AugmentedRackBialgebra:
    """Assemble and certify the augmented structure with mu = action o (phi (x) id)."""
    mu = action.compose(tensor_product_map(phi, FinMap.identity(carrier.basis)))
    return certify_augmented(AugmentedRackBialgebra(
        RackBialgebra(carrier, mu), hopf, phi, action))


def trivial_augmented(carrier: Coalgebra, hopf, action: FinMap) -> AugmentedRackBialgebra:
    """Augmentation through phi = eps * 1; the induced product is left-trivial."""
    hc = hopf.coalgebra
    phi = FinMap.from_function(
        carrier.basis, hc.basis,
        lambda lab: hc.unit.scale(carrier.counit.get(lab, ZERO)))
    return augmented_from_action(carrier, hopf, phi, action)


def augmented_conjugation(g: FiniteGroup) -> AugmentedRackBialgebra:
    """The group algebra acting on itself by conjugation, phi = id."""
    hopf = group_hopf(g)
    c = hopf.coalgebra
    domain = tensor_basis(c.basis, c.basis)

    def col(pair: Label) -> FinVec:
        lg, lx = split_label(c.basis, pair)
        return FinVec.unit(c.basis, g.conjugate(lg, lx))

    action = FinMap.from_function(domain, c.basis, col)
    return augmented_from_action(c, hopf, FinMap.identity(c.basis), action)


def augmented_rack_algebra(x: FiniteRack, g: FiniteGroup,
                           to_group: Mapping[str, str],
                           action_table: Mapping[tuple[str, str], str]) -> AugmentedRackBialgebra:
    """Linearize a rack fibered over a group: phi from ``to_group`` and the
    group action on the rack from ``action_table``; all compatibilities are
    certified exhaustively."""
    carrier = group_like_coalgebra(f"K[{x.name}]", x.elements, x.unit)
    hopf = group_hopf(g)
    hc = hopf.coalgebra
    phi = FinMap.from_function(
        carrier.basis, hc.basis, lambda lab: FinVec.unit(hc.basis, to_group[lab]))
    domain = tensor_basis(hc.basis, carrier.basis)
    action = FinMap.from_function(
        domain, carrier.basis,
        lambda pair: FinVec.unit(carrier.basis, action_table[(pair[0], pair[1])]))
    return augmented_from_action(carrier, hopf, phi, action)


def _uar_build(h: LeibnizAlgebra, k: int, z: Sequence[FinVec] | None,
               env_cap: int | None = None) -> AugmentedRackBialgebra:
    q = quotient_lie(h, z=z)
    env = enveloping_hopf(q.algebra, k + 1 if env_cap is None else env_cap)
    sym = symmetric_coalgebra(h.basis, k)
    ph = phi_map(env, q, sym)
    domain = tensor_basis(env.basis, sym.basis)

    def col(pair: Label) -> FinVec:
        word, mono = pair
        return module_action(env, q, sym,
                             FinVec.unit(env.basis, word), FinVec.unit(sym.basis, mono))

    action = FinMap.from_function(domain, sym.basis, col)
    return augmented_from_action(sym, env, ph, action)


def uar_infinity(h: LeibnizAlgebra, k: int,
                 z: Sequence[FinVec] | None = None,
                 env_cap: int | None = None) -> AugmentedRackBialgebra:
    """The universal augmented rack bialgebra of a Leibniz algebra,
    truncated at symmetric degree k.

    The carrier is S(h) in degrees <= k; the Hopf algebra is the enveloping
    algebra of h modulo a sandwich ideal, capped at k + 1 for commutator
    headroom.  A word of generators acts letterwise by bracket derivations,
    and phi symmetrizes monomials into the envelope.

    With ``z`` unspecified the construction runs twice, over the squares
    ideal and over the left center, and the two products are compared; the
    result is independent of the choice, so a mismatch means a bug.
    """
    check_leibniz(h)
    if k < 0:
        raise SchemaError("truncation order must be nonnegative")
    if env_cap is not None and env_cap < k + 1:
        raise SchemaError("envelope cap must leave commutator headroom")
    if z is not None:
        return _uar_build(h, k, list(z), env_cap)
    built_sq = _uar_build(h, k, None, env_cap)
    built_zc = _uar_build(h, k, left_center(h), env_cap)
    mu_sq = built_sq.rack.mu
    mu_zc = built_zc.rack.mu
    for pair in mu_sq.domain.labels:
        if mu_sq.column(pair) != mu_zc.column(pair):
            raise DecompositionFailure("sandwich ideal independence", pair,
                                       mu_sq.column(pair), mu_zc.column(pair))
    return built_sq


# ---------------------------------------------------------------------------
# derived structure
# ---------------------------------------------------------------------------


def primitives_leibniz(rb: RackBialgebra) -> LeibnizAlgebra:
    """Restrict the product to primitives; self-distributivity makes the
    restriction a Leibniz bracket, which is verified on the result."""
    if not rb.certified:
        raise RackalgError("primitives_leibniz needs a certified rack bialgebra")
    prims = primitives(rb.carrier)
    solver = SpanSolver(prims)
    entries: dict[tuple[int, int], dict[int, Fraction]] = {}
    for j, x in enumerate(prims, start=1):
        for k, y in enumerate(prims, start=1):
            v = rb.apply(x, y)
            coords = solver.coordinates(v)
            if coords is None:
                raise RackalgError("product of primitives left the primitive subspace")
            entries[(j, k)] = {i: c for i, c in enumerate(coords, start=1) if c}
    h = LeibnizAlgebra.from_table(len(prims), entries, name=f"Prim({rb.basis.name})")
    check_leibniz(h)
    return h


def _solve_set_like_system(c: Coalgebra) -> list[FinVec]:
    """All rational solutions of delta(a) = a (x) a, eps(a) = 1, found by an
    exact quadratic solve.  Parametric and irrational branches are dropped."""
    import sympy

    n = c.basis.dim
    syms = list(sympy.symbols(f"c0:{n}"))

    def to_sym(q: Fraction):
        return sympy.Rational(q.numerator, q.denominator)

    delta_rows: dict[Label, object] = {}
    for i, lab in enumerate(c.basis.labels):
        for sq_lab, coeff in c.delta.column(lab).entries.items():
            delta_rows[sq_lab] = delta_rows.get(sq_lab, sympy.Integer(0)) + to_sym(coeff) * syms[i]
    eqs = []
    for sq_lab in c.square.labels:
        l1, l2 = split_label(c.basis, sq_lab)
        lhs = delta_rows.get(sq_lab, sympy.Integer(0))
        eqs.append(sympy.Eq(lhs, syms[c.basis.index(l1)] * syms[c.basis.index(l2)]))
    eps_expr = sympy.Integer(0)
    for i, lab in enumerate(c.basis.labels):
        e = c.counit.get(lab)
        if e:
            eps_expr += to_sym(e) * syms[i]
    eqs.append(sympy.Eq(eps_expr, 1))
    solutions = sympy.solve(eqs, syms, dict=True)
    out: list[FinVec] = []
    for sol in solutions:
        if len(sol) < n:
            continue
        vals = [sol[s] for s in syms]
        if any(getattr(v, "free_symbols", None) for v in vals):
            continue
        try:
            fracs = [Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)) for v in vals]
        except (TypeError, ValueError):
            continue
        v = FinVec.build(c.basis, zip(c.basis.labels, fracs))
        if all(v != w for w in out):
            out.append(v)
    return out


def set_like_elements(rb: RackBialgebra) -> list[tuple[str, FinVec]]:
    """Named set-like elements of the carrier.

    Basis vectors are always scanned; carriers of dimension at most 6 get
    the full exact quadratic solve, so every rational set-like is found
    there.  Larger carriers may have undetected set-likes outside the
    basis, which the callers of this function accept.
    """
    c = rb.carrier
    found: list[tuple[str, FinVec]] = []
    for lab in c.basis.labels:
        v = FinVec.unit(c.basis, lab)
        if c.eps_of(v) == ONE and c.delta(v) == v.tensor(v, c.square):
            found.append((str(lab) if isinstance(lab, str) else "", v))
    if c.basis.dim <= 6:
        for v in _solve_set_like_system(c):
            if all(v != w for _, w in found):
                found.append(("", v))
    named: list[tuple[str, FinVec]] = []
    counter = 0
    for name, v in found:
        if not name:
            if v == c.unit:
                name = "1"
            else:
                counter += 1
                name = f"g{counter}"
        named.append((name, v))
    return named


def set_likes(rb: RackBialgebra) -> FiniteRack:
    """The finite rack of detected set-like elements under the product."""
    if not rb.certified:
        raise RackalgError("set_likes needs a certified rack bialgebra")
    named = set_like_elements(rb)
    names = [name for name, _ in named]
    unit_name = None
    for name, v in named:
        if v == rb.carrier.unit:
            unit_name = name
    if unit_name is None:
        raise RackalgError("coaugmentation not detected among set-likes")
    op: dict[tuple[str, str], str] = {}
    for na, va in named:
        for nb, vb in named:
            w = rb.apply(va, vb)
            target = next((nc for nc, vc in named if vc == w), None)
            if target is None:
                raise RackalgError(
                    f"product of set-likes {na!r} |> {nb!r} escapes the detected set")
            op[(na, nb)] = target
    rack = FiniteRack.build(f"Slike({rb.basis.name})", names, unit_name, op)
    check_rack(rack)
    return rack


# ---------------------------------------------------------------------------
# property checks
# ---------------------------------------------------------------------------


def yang_baxter_check(rb: RackBialgebra) -> CheckReport:
    """Braid relation for R(a (x) b) = sum b1 (x) (b2 |> a) on basis triples."""
    if not rb.certified:
        raise RackalgError("yang_baxter_check needs a certified rack bialgebra")
    c = rb.carrier
    if not is_cocommutative(c):
        raise RackalgError("yang_baxter_check needs a cocommutative carrier")
    basis = c.basis
    square = c.square

    def r_col(pair: Label) -> FinVec:
        la, lb = split_label(basis, pair)
        out = FinVec.zero(square)
        for b1, b2, cb in c.sweedler(FinVec.unit(basis, lb)):
            out = out + FinVec.unit(basis, b1).tensor(
                rb.mu.column(merge_labels(basis, b2, la)), square).scale(cb)
        return out

    r = FinMap.from_function(square, square, r_col)
    ident = FinMap.identity(basis)
    r12 = tensor_product_map(r, ident)
    r23 = tensor_product_map(ident, r)
    lhs = r12.compose(r23).compose(r12)
    rhs = r23.compose(r12).compose(r23)
    checked = 0
    for lab in lhs.domain.labels:
        checked += 1
        if lhs.column(lab) != rhs.column(lab):
            return CheckReport(False, checked, axiom="braid relation", witness=(lab,))
    return CheckReport(True, checked, axiom="braid relation")


def yetter_drinfeld_check(arb: AugmentedRackBialgebra) -> CheckReport:
    """Comodule-module compatibility over the Hopf algebra.

    The coaction is rho = (phi (x) id) o delta; the relation checked on
    basis pairs (h, b) is

        rho(h.b) = sum (h1 phi(b1) S(h3)) (x) (h2.b2).

    Pairs whose right side needs products beyond a capped envelope's
    degree budget are skipped and counted in the report detail.
    """
    if not arb.certified:
        raise RackalgError("yetter_drinfeld_check needs a certified structure")
    bc = arb.carrier
    hopf = arb.hopf
    hc = hopf.coalgebra
    mixed = arb.action.domain
    rho = tensor_product_map(arb.phi, FinMap.identity(bc.basis)).compose(bc.delta)
    anti = hopf.antipode_map()
    checked = skipped = 0
    for lh in hc.basis.labels:
        u = FinVec.unit(hc.basis, lh)
        hsw3 = hc.sweedler3(u)
        for la in bc.basis.labels:
            a = FinVec.unit(bc.basis, la)
            bsw = bc.sweedler(a)
            worst = max((_value_degree(hopf, arb.phi.column(b1)) for b1, _, _ in bsw),
                        default=0)
            if not _fits(hopf, _h_deg(hopf, lh) + worst):
                skipped += 1
                continue
            checked += 1
            lhs = rho(arb.act(u, a))
            rhs = FinVec.zero(mixed)
            for h1, h2, h3, ch in hsw3:
                sh3 = anti.column(h3)
                for b1, b2, cb in bsw:
                    left = hopf.product(hopf.product(
                        FinVec.unit(hc.basis, h1), arb.phi.column(b1)), sh3)
                    right = arb.act(FinVec.unit(hc.basis, h2), FinVec.unit(bc.basis, b2))
                    rhs = rhs + left.tensor(right, mixed).scale(ch * cb)
            if lhs != rhs:
                return CheckReport(False, checked, axiom="yetter-drinfeld compatibility",
                                   witness=(lh, la),
                                   detail=f"{skipped} pairs beyond the degree cap skipped")
    return CheckReport(True, checked, axiom="yetter-drinfeld compatibility",
                       detail=f"{skipped} pairs beyond the degree cap skipped")


def filtration_stable(rb: RackBialgebra) -> CheckReport:
    """Left multiplications preserve every coalgebra filtration level."""
    if not rb.certified:
        raise RackalgError("filtration_stable needs a certified rack bialgebra")
    checked = 0
    for r, level in enumerate(coalgebra_filtration(rb.carrier)):
        solver = SpanSolver(level)
        for lab in rb.basis.labels:
            a = FinVec.unit(rb.basis, lab)
            for v in level:
                checked += 1
                if not solver.contains(rb.apply(a, v)):
                    return CheckReport(False, checked, axiom="filtration stability",
                                       witness=(lab, r))
    return CheckReport(True, checked, axiom="filtration stability")


__all__ = [
    "AugmentedRackBialgebra", "CheckReport", "FiniteRack", "RackBialgebra",
    "adjoint_action", "augmented_conjugation", "augmented_from_action",
    "augmented_rack_algebra", "certify", "certify_augmented", "check_rack",
    "conjugation_rack", "filtration_stable", "gauge", "hopf_adjoint",
    "primitives_leibniz", "rack_group_algebra", "set_like_elements", "set_likes",
    "trivial", "trivial_augmented", "uar_infinity", "ur", "yang_baxter_check",
    "yetter_drinfeld_check",
]
