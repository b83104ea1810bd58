"""Coalgebra axioms, the primitive filtration, convolution, and S(V).

Binomial coproduct values and filtration dimensions are frozen from hand
computation: dim S(V)_k = C(n+k-1, k) for dim V = n, and the level-k
filtration of S(V) is exactly the polynomials of degree <= k.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rackalg.errors import AxiomViolation, RackalgError
from rackalg.exact_core import Basis, FinMap, FinVec, SpanSolver, tensor_basis
from rackalg.symcoalg import (
    Coalgebra,
    check_coalgebra,
    coalgebra_filtration,
    convolution,
    convolution_inverse,
    convolution_unit,
    filtration_order,
    is_cocommutative,
    is_connected,
    is_group_like,
    primitives,
    sym_product_map,
    symmetric_coalgebra,
)

F = Fraction


def group_like_coalgebra(labels, unit_label):
    """K[X] with every basis element group-like (used as a non-connected foil)."""
    basis = Basis("KX", tuple(labels))
    square = tensor_basis(basis, basis)
    delta = FinMap.from_function(basis, square,
                                 lambda l: FinVec.unit(square, (l, l)))
    counit = {l: F(1) for l in labels}
    return Coalgebra(basis, delta, counit, FinVec.unit(basis, unit_label))


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def test_symmetric_coalgebra_passes_axioms():
    for n, cap in ((1, 3), (2, 2), (3, 2)):
        V = Basis("V", tuple(range(1, n + 1)))
        S = symmetric_coalgebra(V, cap)
        assert S.basis.dim == sum(math.comb(n + k - 1, k) for k in range(cap + 1))
        check_coalgebra(S)
        assert is_cocommutative(S)


def test_group_like_coalgebra_passes_axioms():
    c = group_like_coalgebra(("e", "g"), "e")
    check_coalgebra(c)
    assert is_cocommutative(c)
    assert is_group_like(c, FinVec.unit(c.basis, "g"))
    assert not is_group_like(c, FinVec.unit(c.basis, "g").scale(F(2)))


def test_broken_coassociativity_is_caught():
    # delta(g) = g (x) g + e (x) g: the two reassociations differ in the
    # g (x) e (x) g term
    basis = Basis("C", ("e", "g"))
    square = tensor_basis(basis, basis)

    def col(l):
        if l == "e":
            return FinVec.unit(square, ("e", "e"))
        return FinVec.unit(square, ("g", "g")) + FinVec.unit(square, ("e", "g"))

    bad = Coalgebra(basis, FinMap.from_function(basis, square, col),
                    {"e": F(1), "g": F(1)}, FinVec.unit(basis, "e"))
    with pytest.raises(AxiomViolation) as exc:
        check_coalgebra(bad)
    assert exc.value.axiom == "coassociativity"
    assert exc.value.witness == "g"


def test_broken_counit_is_caught():
    # delta is group-like-shaped but the counit misses g
    basis = Basis("C", ("e", "g"))
    square = tensor_basis(basis, basis)
    delta = FinMap.from_function(basis, square, lambda l: FinVec.unit(square, (l, l)))
    bad = Coalgebra(basis, delta, {"e": F(1)}, FinVec.unit(basis, "e"))
    with pytest.raises(AxiomViolation) as exc:
        check_coalgebra(bad)
    assert exc.value.axiom == "left counit"
    assert exc.value.witness == "g"


def test_non_group_like_unit_is_caught():
    S = symmetric_coalgebra(Basis("V", (1,)), 2)
    bad = Coalgebra(S.basis, S.delta, S.counit, FinVec.unit(S.basis, (1,)))
    with pytest.raises(AxiomViolation) as exc:
        check_coalgebra(bad)
    assert exc.value.axiom == "counit of unit"


# ---------------------------------------------------------------------------
# binomial coproduct values
# ---------------------------------------------------------------------------


def test_delta_of_square_monomial():
    S = symmetric_coalgebra(Basis("V", (1, 2)), 2)
    d = S.delta(FinVec.unit(S.basis, (1, 1)))
    assert dict(d.entries) == {
        ((), (1, 1)): F(1),
        ((1,), (1,)): F(2),
        ((1, 1), ()): F(1),
    }


def test_delta_of_mixed_cube_monomial():
    S = symmetric_coalgebra(Basis("V", (1, 2)), 3)
    d = S.delta(FinVec.unit(S.basis, (1, 1, 2)))
    assert dict(d.entries) == {
        ((), (1, 1, 2)): F(1),
        ((1,), (1, 2)): F(2),
        ((2,), (1, 1)): F(1),
        ((1, 1), (2,)): F(1),
        ((1, 2), (1,)): F(2),
        ((1, 1, 2), ()): F(1),
    }


def test_sweedler_iteration_matches_delta():
    S = symmetric_coalgebra(Basis("V", (1, 2)), 2)
    v = FinVec.unit(S.basis, (1, 2)) + FinVec.unit(S.basis, (1,)).scale(F(3))
    terms = S.sweedler(v)
    total = FinVec.zero(S.square)
    for l1, l2, c in terms:
        total = total + FinVec.unit(S.basis, l1).tensor(FinVec.unit(S.basis, l2),
                                                        S.square).scale(c)
    assert total == S.delta(v)


# ---------------------------------------------------------------------------
# primitives and filtration
# ---------------------------------------------------------------------------


def test_primitives_of_sym_are_degree_one():
    S = symmetric_coalgebra(Basis("V", (1, 2, 3)), 2)
    prim = primitives(S)
    assert sorted(list(v.entries) for v in prim) == [[(1,)], [(2,)], [(3,)]]


def test_filtration_levels_are_degree_levels():
    n, cap = 2, 3
    S = symmetric_coalgebra(Basis("V", tuple(range(1, n + 1))), cap)
    levels = coalgebra_filtration(S)
    expected = [sum(math.comb(n + j - 1, j) for j in range(k + 1))
                for k in range(cap + 1)]
    assert [len(l) for l in levels] == expected
    assert is_connected(S)
    # each level is spanned by the monomials of that degree bound
    for k, level in enumerate(levels):
        span = SpanSolver(level)
        for mono in S.basis.labels:
            assert span.contains(FinVec.unit(S.basis, mono)) == (len(mono) <= k)


def test_filtration_order_values():
    S = symmetric_coalgebra(Basis("V", (1, 2)), 2)
    assert filtration_order(S, S.unit) == 0
    assert filtration_order(S, FinVec.unit(S.basis, (2,))) == 1
    assert filtration_order(S, FinVec.unit(S.basis, (1, 2))) == 2
    mixed = FinVec.unit(S.basis, (1,)) + FinVec.unit(S.basis, (2, 2)).scale(F(5))
    assert filtration_order(S, mixed) == 2


def test_group_like_coalgebra_is_not_connected():
    c = group_like_coalgebra(("e", "g"), "e")
    levels = coalgebra_filtration(c)
    assert [len(l) for l in levels] == [1]
    assert not is_connected(c)
    assert filtration_order(c, FinVec.unit(c.basis, "g")) is None


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------


def test_convolution_unit_is_two_sided_identity():
    V = Basis("V", (1, 2))
    S = symmetric_coalgebra(V, 2)
    mul = sym_product_map(S, V)
    e = convolution_unit(S, S.unit)
    f = FinMap.from_function(S.basis, S.basis,
                             lambda m: FinVec.unit(S.basis, m).scale(F(len(m) + 1)))
    assert convolution(S, mul, e, f) == f
    assert convolution(S, mul, f, e) == f


def test_convolution_inverse_of_identity_is_signed_reflection():
    # on S(V) the convolution inverse of id sends a monomial m to (-1)^|m| m
    V = Basis("V", (1, 2))
    S = symmetric_coalgebra(V, 3)
    mul = sym_product_map(S, V)
    inv = convolution_inverse(S, mul, S.unit, FinMap.identity(S.basis))
    for mono in S.basis.labels:
        expected = FinVec.unit(S.basis, mono).scale(F((-1) ** len(mono)))
        assert inv(FinVec.unit(S.basis, mono)) == expected
    e = convolution_unit(S, S.unit)
    assert convolution(S, mul, FinMap.identity(S.basis), inv) == e
    assert convolution(S, mul, inv, FinMap.identity(S.basis)) == e


def test_convolution_inverse_requires_termination():
    # on the group-like coalgebra the geometric series never terminates
    c = group_like_coalgebra(("e", "g"), "e")
    square = tensor_basis(c.basis, c.basis)
    # group multiplication of Z/2
    table = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"}
    mul = FinMap.from_function(square, c.basis,
                               lambda p: FinVec.unit(c.basis, table[p]))
    with pytest.raises(RackalgError):
        convolution_inverse(c, mul, c.unit, FinMap.identity(c.basis))


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3))
def test_convolution_is_associative_on_scaling_maps(a, b):
    V = Basis("V", (1, 2))
    S = symmetric_coalgebra(V, 2)
    mul = sym_product_map(S, V)

    def scaling(c):
        return FinMap.from_function(S.basis, S.basis,
                                    lambda m: FinVec.unit(S.basis, m).scale(F(c) ** len(m)))

    f, g, h = scaling(a), scaling(b), scaling(a + b)
    lhs = convolution(S, mul, convolution(S, mul, f, g), h)
    rhs = convolution(S, mul, f, convolution(S, mul, g, h))
    assert lhs == rhs
