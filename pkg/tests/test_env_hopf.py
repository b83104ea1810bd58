"""PBW straightening, Hopf axioms of U(g), symmetrization, adjoint module.

The straightening oracle below resolves inversions with the opposite
scheduling strategy (rightmost inversion first, no memo); diamond-lemma
confluence says both must give the same normal form.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rackalg.errors import AxiomViolation, DegreeCapExceeded
from rackalg.exact_core import FinMap, FinVec, tensor_product_map
from rackalg.env_hopf import (
    check_hopf,
    derivation_action,
    enveloping_hopf,
    module_action,
    phi,
    phi_map,
    symmetrize,
    symmetrize_word,
)
from rackalg.fixtures import load
from rackalg.leibniz import quotient_lie
from rackalg.symcoalg import (
    check_coalgebra,
    convolution_inverse,
    is_cocommutative,
    symmetric_coalgebra,
    sym_product_map,
)

F = Fraction


def oracle_straighten(env, word):
    """Rightmost-inversion-first straightening, memo-free."""
    idx = env.lie.basis.index
    spots = [i for i in range(len(word) - 1) if idx(word[i]) > idx(word[i + 1])]
    if not spots:
        return FinVec.unit(env.basis, tuple(word))
    i = spots[-1]
    x, y = word[i], word[i + 1]
    out = oracle_straighten(env, word[:i] + (y, x) + word[i + 2:])
    for lab, c in env.lie.bracket_of_labels(x, y).entries.items():
        out = out + oracle_straighten(env, word[:i] + (lab,) + word[i + 2:]).scale(c)
    return out


@pytest.fixture(scope="module")
def env_sl2():
    return enveloping_hopf(load("sl2"), 3)


# ---------------------------------------------------------------------------
# straightening
# ---------------------------------------------------------------------------


def test_straighten_frozen_values():
    env = enveloping_hopf(load("lie2"), 4)
    # labels 1 = x, 2 = y with [x, y] = y: yx = xy - y
    assert dict(env.straighten((2, 1)).entries) == {(1, 2): F(1), (2,): F(-1)}
    # yyx = xyy - 2yy
    assert dict(env.straighten((2, 2, 1)).entries) == {(1, 2, 2): F(1), (2, 2): F(-2)}


def test_straighten_sl2_value(env_sl2):
    # labels 1 = e, 2 = f, 3 = h with [e,f] = h, [h,e] = 2e, [h,f] = -2f:
    # fe = ef - h
    assert dict(env_sl2.straighten((2, 1)).entries) == {(1, 2): F(1), (3,): F(-1)}
    # he = eh + 2e
    assert dict(env_sl2.straighten((3, 1)).entries) == {(1, 3): F(1), (1,): F(2)}


def test_straighten_confluence_against_oracle(env_sl2):
    labels = env_sl2.lie.basis.labels
    for word in itertools.product(labels, repeat=3):
        assert env_sl2.straighten(word) == oracle_straighten(env_sl2, word)


def test_straighten_sorted_words_are_fixed(env_sl2):
    for word in env_sl2.basis.labels:
        assert env_sl2.straighten(word) == FinVec.unit(env_sl2.basis, word)


def test_degree_cap_enforced(env_sl2):
    with pytest.raises(DegreeCapExceeded):
        env_sl2.straighten((1, 1, 1, 1))
    x = FinVec.unit(env_sl2.basis, (1, 1))
    with pytest.raises(DegreeCapExceeded):
        env_sl2.product(x, x)


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------


def test_hopf_axioms_small_caps():
    for name, cap in (("lie2", 4), ("sl2", 3), ("heis3", 3), ("abelian2", 3)):
        q = quotient_lie(load(name))
        env = enveloping_hopf(q.algebra, cap)
        check_coalgebra(env.coalgebra)
        assert is_cocommutative(env.coalgebra)
        check_hopf(env.coalgebra, env.product, env.antipode_map(),
                   degree_of=len, cap=cap)


def test_enveloping_rejects_non_lie_input():
    with pytest.raises(AxiomViolation):
        enveloping_hopf(load("sq2"), 3)


def test_antipode_is_convolution_inverse_of_identity(env_sl2):
    inv = convolution_inverse(env_sl2.coalgebra, env_sl2.truncating_mul_map(),
                              env_sl2.unit, FinMap.identity(env_sl2.basis))
    assert inv == env_sl2.antipode_map()


def test_antipode_frozen_value(env_sl2):
    # S(ef) = fe = ef - h
    s = env_sl2.antipode_map()(FinVec.unit(env_sl2.basis, (1, 2)))
    assert dict(s.entries) == {(1, 2): F(1), (3,): F(-1)}


def test_check_hopf_catches_wrong_antipode(env_sl2):
    with pytest.raises(AxiomViolation) as exc:
        check_hopf(env_sl2.coalgebra, env_sl2.product,
                   FinMap.identity(env_sl2.basis), degree_of=len, cap=3)
    assert "antipode" in exc.value.axiom


# ---------------------------------------------------------------------------
# symmetrization
# ---------------------------------------------------------------------------


def test_symmetrize_frozen_value():
    env = enveloping_hopf(load("lie2"), 3)
    assert dict(symmetrize_word(env, (1, 2)).entries) == {(1, 2): F(1), (2,): F(-1, 2)}
    assert dict(symmetrize_word(env, (2, 1)).entries) == {(1, 2): F(1), (2,): F(-1, 2)}
    assert symmetrize_word(env, ()) == env.unit


def test_symmetrize_is_coalgebra_morphism(env_sl2):
    # Delta_U o omega = (omega (x) omega) o Delta_S on S(g)
    sym_g = symmetric_coalgebra(env_sl2.lie.basis, env_sl2.cap)
    omega = FinMap.from_function(sym_g.basis, env_sl2.basis,
                                 lambda m: symmetrize_word(env_sl2, m))
    lhs = env_sl2.coalgebra.delta.compose(omega)
    rhs = tensor_product_map(omega, omega).compose(sym_g.delta)
    assert lhs == rhs


def test_symmetrize_is_adjoint_equivariant(env_sl2):
    # omega(ad_x(m)) = x omega(m) - omega(m) x for primitive x
    env = env_sl2
    g = env.lie
    sym_g = symmetric_coalgebra(g.basis, env.cap)
    for x_lab in g.basis.labels:
        x = FinVec.unit(g.basis, x_lab)
        xu = env.embed(x)
        for mono in sym_g.basis.labels:
            if len(mono) + 1 > env.cap:
                continue
            acted = derivation_action(g, sym_g, x, FinVec.unit(sym_g.basis, mono))
            lhs = symmetrize(env, acted)
            om = symmetrize_word(env, mono)
            rhs = env.product(xu, om) - env.product(om, xu)
            assert lhs == rhs


# ---------------------------------------------------------------------------
# adjoint module and phi
# ---------------------------------------------------------------------------


def test_derivation_action_frozen_value():
    sq2 = load("sq2")
    sym = symmetric_coalgebra(sq2.basis, 3)
    x = FinVec.unit(sq2.basis, 1)
    m = FinVec.unit(sym.basis, (1, 1))
    # ad_{e1}(e1) = e2, so the derivation gives e2 e1 + e1 e2 = 2 e1 e2
    acted = derivation_action(sq2, sym, x, m)
    assert dict(acted.entries) == {(1, 2): F(2)}


def test_derivation_action_is_a_derivation():
    h = load("nonlie3")
    sym = symmetric_coalgebra(h.basis, 4)
    mul = sym_product_map(sym, h.basis)
    x = FinVec.build(h.basis, {1: F(1), 2: F(3)})
    m1 = FinVec.unit(sym.basis, (1, 2))
    m2 = FinVec.unit(sym.basis, (1,)) + FinVec.unit(sym.basis, (3,)).scale(F(2))
    prod = mul(m1.tensor(m2, sym.square))
    lhs = derivation_action(h, sym, x, prod)
    rhs = mul(derivation_action(h, sym, x, m1).tensor(m2, sym.square)) + \
        mul(m1.tensor(derivation_action(h, sym, x, m2), sym.square))
    assert lhs == rhs


def test_module_action_respects_products():
    # (uv).m = u.(v.m) for words in U(g), including bracket corrections
    h = load("sl2")
    q = quotient_lie(h)
    env = enveloping_hopf(q.algebra, 3)
    sym = symmetric_coalgebra(h.basis, 2)
    u = env.embed(FinVec.unit(q.algebra.basis, 3))
    v = env.embed(FinVec.unit(q.algebra.basis, 1))
    m = FinVec.unit(sym.basis, (1, 2))
    uv = env.product(u, v)
    assert module_action(env, q, sym, uv, m) == \
        module_action(env, q, sym, u, module_action(env, q, sym, v, m))
    vu = env.product(v, u)
    commutator_action = module_action(env, q, sym, uv - vu, m)
    bracket = q.algebra.bracket_of(FinVec.unit(q.algebra.basis, 3),
                                   FinVec.unit(q.algebra.basis, 1))
    assert commutator_action == module_action(env, q, sym, env.embed(bracket), m)


def test_module_action_kills_quotient_kernel():
    h = load("nonlie3")
    q = quotient_lie(h, z=None)
    env = enveloping_hopf(q.algebra, 3)
    sym = symmetric_coalgebra(h.basis, 3)
    # e3 spans the squares ideal, p(e3) = 0, so e3 acts as zero through p
    for z in q.z_basis:
        assert q.p(z).is_zero
        for mono in sym.basis.labels:
            acted = derivation_action(h, sym, z, FinVec.unit(sym.basis, mono))
            # z is in the left center, so even the h-level action vanishes
            assert acted.is_zero


def test_phi_frozen_values():
    sq2 = load("sq2")
    q = quotient_lie(sq2)
    env = enveloping_hopf(q.algebra, 3)
    sym = symmetric_coalgebra(sq2.basis, 3)
    assert dict(phi(env, q, sym, FinVec.unit(sym.basis, (1, 1))).entries) == \
        {(1, 1): F(1)}
    assert phi(env, q, sym, FinVec.unit(sym.basis, (2,))).is_zero
    assert phi(env, q, sym, sym.unit) == env.unit


def test_phi_is_coalgebra_morphism():
    h = load("nonlie3")
    q = quotient_lie(h)
    env = enveloping_hopf(q.algebra, 3)
    sym = symmetric_coalgebra(h.basis, 3)
    pm = phi_map(env, q, sym)
    lhs = env.coalgebra.delta.compose(pm)
    rhs = tensor_product_map(pm, pm).compose(sym.delta)
    assert lhs == rhs


@settings(max_examples=15, deadline=None)
@given(st.permutations([1, 1, 2, 3]))
def test_straighten_agrees_with_oracle_on_heis3_words(word):
    env = enveloping_hopf(load("heis3"), 4)
    assert env.straighten(tuple(word)) == oracle_straighten(env, tuple(word))
