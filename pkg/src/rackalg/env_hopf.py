"""Enveloping algebra of a Lie algebra as a Hopf algebra, degree-capped.

The basis is the set of Poincare-Birkhoff-Witt monomials: words sorted in the
basis order of the Lie algebra, of length at most ``cap``.  Products
straighten arbitrary words by the diamond lemma (swap an adjacent inversion,
pay a bracket term), which terminates because (length, inversion count)
drops.  Since the bracket lowers word length, straightening never leaves the
cap; only concatenation can, and then :class:`DegreeCapExceeded` is raised
rather than silently truncating.

In the PBW basis the coproduct takes the same binomial form as in the
symmetric coalgebra (subwords of sorted words are sorted), so the coalgebra
is shared with :mod:`rackalg.symcoalg`.  The antipode reverses words with a
parity sign.

The second half of the module is the adjoint machinery for a Leibniz algebra
h with Lie quotient g = h/z: U(g) acts on the truncated S(h) by bracket
derivations, S(g) maps into U(g) by symmetrization, and phi is the composite
S(h) -> S(g) -> U(g).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from rackalg.errors import AxiomViolation, DegreeCapExceeded
from rackalg.exact_core import (
    Basis,
    Coeff,
    FinMap,
    FinVec,
    Label,
    split_label,
    tensor_basis,
)
from rackalg.leibniz import LeibnizAlgebra, QuotientLie, check_leibniz, is_lie
from rackalg.symcoalg import Coalgebra, sort_monomial, symmetric_coalgebra

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class EnvelopingHopf:
    """U(g) up to filtration degree ``cap`` in the PBW monomial basis."""

    lie: LeibnizAlgebra
    cap: int
    coalgebra: Coalgebra
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def basis(self) -> Basis:
        return self.coalgebra.basis

    @property
    def unit(self) -> FinVec:
        return self.coalgebra.unit

    def embed(self, x: FinVec) -> FinVec:
        """Inclusion g -> U(g) as length-one words."""
        return FinVec.build(self.basis, (((lab,), c) for lab, c in x.entries.items()))

    def straighten(self, word: Iterable[Label]) -> FinVec:
        """Expand an arbitrary word in the PBW basis."""
        word = tuple(word)
        if len(word) > self.cap:
            raise DegreeCapExceeded(len(word), self.cap, "straighten")
        cached = self._memo.get(word)
        if cached is not None:
            return cached
        idx = self.lie.basis.index
        for i in range(len(word) - 1):
            if idx(word[i]) > idx(word[i + 1]):
                break
        else:
            result = FinVec.unit(self.basis, word)
            self._memo[word] = result
            return result
        x, y = word[i], word[i + 1]
        result = self.straighten(word[:i] + (y, x) + word[i + 2:])
        for lab, c in self.lie.bracket_of_labels(x, y).entries.items():
            result = result + self.straighten(word[:i] + (lab,) + word[i + 2:]).scale(c)
        self._memo[word] = result
        return result

    def product(self, a: FinVec, b: FinVec) -> FinVec:
        out = FinVec.zero(self.basis)
        for wa, ca in a.entries.items():
            for wb, cb in b.entries.items():
                if len(wa) + len(wb) > self.cap:
                    raise DegreeCapExceeded(len(wa) + len(wb), self.cap, "product")
                out = out + self.straighten(wa + wb).scale(ca * cb)
        return out

    def product_many(self, factors: Iterable[FinVec]) -> FinVec:
        acc = self.unit
        for f in factors:
            acc = self.product(acc, f)
        return acc

    def antipode_map(self) -> FinMap:
        """Words reverse with a parity sign; reversal then straightens."""
        return FinMap.from_function(
            self.basis, self.basis,
            lambda w: self.straighten(tuple(reversed(w))).scale(Fraction((-1) ** len(w))))

    def truncating_mul_map(self) -> FinMap:
        """Multiplication as a map on the tensor square, overflow quotiented.

        Safe wherever total degree cannot exceed the cap, e.g. inside
        convolutions against the degree-preserving coproduct.
        """
        square = self.coalgebra.square

        def col(pair: Label) -> FinVec:
            wa, wb = split_label(self.basis, pair)
            if len(wa) + len(wb) > self.cap:
                return FinVec.zero(self.basis)
            return self.straighten(wa + wb)

        return FinMap.from_function(square, self.basis, col)


def enveloping_hopf(lie: LeibnizAlgebra, cap: int, name: str | None = None) -> EnvelopingHopf:
    """Build U(g) for a genuine Lie algebra g (Jacobi and antisymmetry checked)."""
    check_leibniz(lie)
    if not is_lie(lie):
        raise AxiomViolation("antisymmetry", lie.basis.name,
                             "bracket table", "its opposite negated")
    coalg = symmetric_coalgebra(lie.basis, cap, name=name or f"U({lie.basis.name})<={cap}")
    return EnvelopingHopf(lie=lie, cap=cap, coalgebra=coalg)


# ---------------------------------------------------------------------------
# generic bialgebra / Hopf checking
# ---------------------------------------------------------------------------


def check_hopf(coalg: Coalgebra, product: Callable[[FinVec, FinVec], FinVec],
               antipode: FinMap, degree_of: Callable[[Label], int] | None = None,
               cap: int | None = None) -> None:
    """Verify Hopf-algebra axioms on basis elements.

    ``product`` is called on basis vectors; when ``cap`` is given, checks
    whose factor degrees (per ``degree_of``) sum beyond it are skipped, which
    is the correct reading for a degree-capped algebra.  Raises
    :class:`AxiomViolation` with the offending labels.
    """
    basis = coalg.basis
    deg = degree_of or (lambda lab: 0)

    def fits(*labels: Label) -> bool:
        return cap is None or sum(deg(l) for l in labels) <= cap

    def e(lab: Label) -> FinVec:
        return FinVec.unit(basis, lab)

    unit = coalg.unit
    for a in basis.labels:
        if fits(a):
            if product(unit, e(a)) != e(a):
                raise AxiomViolation("left unit", a, product(unit, e(a)), e(a))
            if product(e(a), unit) != e(a):
                raise AxiomViolation("right unit", a, product(e(a), unit), e(a))
    for a, b, c in itertools.product(basis.labels, repeat=3):
        if fits(a, b, c):
            lhs = product(product(e(a), e(b)), e(c))
            rhs = product(e(a), product(e(b), e(c)))
            if lhs != rhs:
                raise AxiomViolation("associativity", (a, b, c), lhs, rhs)
    square = coalg.square
    for a, b in itertools.product(basis.labels, repeat=2):
        if not fits(a, b):
            continue
        # delta(ab) = delta(a) delta(b) with the componentwise square product
        lhs = coalg.delta(product(e(a), e(b)))
        rhs = FinVec.zero(square)
        for a1, a2, ca in coalg.sweedler(e(a)):
            for b1, b2, cb in coalg.sweedler(e(b)):
                term = product(e(a1), e(b1)).tensor(product(e(a2), e(b2)), square)
                rhs = rhs + term.scale(ca * cb)
        if lhs != rhs:
            raise AxiomViolation("coproduct multiplicativity", (a, b), lhs, rhs)
        ea = coalg.eps_of(product(e(a), e(b)))
        eb = coalg.eps_of(e(a)) * coalg.eps_of(e(b))
        if ea != eb:
            raise AxiomViolation("counit multiplicativity", (a, b), ea, eb)
    for a in basis.labels:
        left = FinVec.zero(basis)
        right = FinVec.zero(basis)
        for a1, a2, c in coalg.sweedler(e(a)):
            left = left + product(antipode(e(a1)), e(a2)).scale(c)
            right = right + product(e(a1), antipode(e(a2))).scale(c)
        target = unit.scale(coalg.eps_of(e(a)))
        if left != target:
            raise AxiomViolation("left antipode", a, left, target)
        if right != target:
            raise AxiomViolation("right antipode", a, right, target)


# ---------------------------------------------------------------------------
# the adjoint module S(h) over U(g)
# ---------------------------------------------------------------------------


def derivation_action(h: LeibnizAlgebra, sym: Coalgebra, x: FinVec, m: FinVec) -> FinVec:
    """Extend ad_x = [x, -] on h to S(h) as a coalgebra derivation.

    Degree is preserved, so the truncated S(h) is closed under the action.
    """
    out = FinVec.zero(sym.basis)
    for mono, cm in m.entries.items():
        assert isinstance(mono, tuple)
        for i, letter in enumerate(mono):
            img = h.bracket_of(x, FinVec.unit(h.basis, letter))
            for lab, c in img.entries.items():
                new = sort_monomial(h.basis, mono[:i] + (lab,) + mono[i + 1:])
                out = out + FinVec.unit(sym.basis, new).scale(cm * c)
    return out


def module_action(env: EnvelopingHopf, q: QuotientLie, sym: Coalgebra,
                  u: FinVec, m: FinVec) -> FinVec:
    """Left U(g)-action on S(h): a word acts by its letters, rightmost first.

    A letter is a g-basis label; it acts through the bracket with its
    representative in h, which is independent of the choice because the
    quotient kernel sits inside the left center.
    """
    out = FinVec.zero(sym.basis)
    for word, cu in u.entries.items():
        assert isinstance(word, tuple)
        acc = m
        for letter in reversed(word):
            rep = q.section(FinVec.unit(q.algebra.basis, letter))
            acc = derivation_action(q.source, sym, rep, acc)
        out = out + acc.scale(cu)
    return out


def symmetrize_word(env: EnvelopingHopf, word: tuple[Label, ...]) -> FinVec:
    """Average of all orderings of the word, straightened into U(g)."""
    k = len(word)
    if k == 0:
        return env.unit
    out = FinVec.zero(env.basis)
    for perm in itertools.permutations(word):
        out = out + env.straighten(perm)
    return out.scale(Fraction(1, math.factorial(k)))


def symmetrize(env: EnvelopingHopf, v: FinVec) -> FinVec:
    """Coalgebra isomorphism S(g) -> U(g) on the shared monomial labels."""
    out = FinVec.zero(env.basis)
    for mono, c in v.entries.items():
        assert isinstance(mono, tuple)
        out = out + symmetrize_word(env, mono).scale(c)
    return out


def phi(env: EnvelopingHopf, q: QuotientLie, sym: Coalgebra, a: FinVec) -> FinVec:
    """S(h) -> U(g): push letters through the projection, then symmetrize."""
    out = FinVec.zero(env.basis)
    for mono, cm in a.entries.items():
        assert isinstance(mono, tuple)
        images = [q.p(FinVec.unit(q.source.basis, letter)) for letter in mono]
        for combo in itertools.product(*(list(img.entries.items()) for img in images)):
            coeff = cm
            for _, c in combo:
                coeff = coeff * c
            word = tuple(lab for lab, _ in combo)
            out = out + symmetrize_word(env, word).scale(coeff)
    return out


def phi_map(env: EnvelopingHopf, q: QuotientLie, sym: Coalgebra) -> FinMap:
    return FinMap.from_function(
        sym.basis, env.basis,
        lambda mono: phi(env, q, sym, FinVec.unit(sym.basis, mono)))


__all__ = [
    "EnvelopingHopf", "check_hopf", "derivation_action", "enveloping_hopf",
    "module_action", "phi", "phi_map", "symmetrize", "symmetrize_word",
]
