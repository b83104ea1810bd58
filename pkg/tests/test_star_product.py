"""Deformed products on polynomial functions and the exponential rack identities."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rackalg.errors import DecompositionFailure, LeibnizViolation, SchemaError
from rackalg.exact_core import FinVec, SeriesScalar, series_exp
from rackalg.fixtures import load
from rackalg.leibniz import LeibnizAlgebra, check_leibniz
from rackalg.star_product import (
    ExpFunction,
    PolyFunction,
    _first_hbar_difference,
    ad_tilde,
    check_hat_morphism,
    exp_hat,
    hat_function,
    lie_rack_product,
    monomial_function,
    psi_function,
    rack_exp,
    star,
    star_exp,
    star_rack_selfdist_check,
)

N = 5
CORPUS = ("abelian1", "abelian2", "abelian3", "sq2", "lie2", "heis3", "sl2")


def vec(h, coords):
    return FinVec.build(h.basis, {lab: Fraction(c) for lab, c in coords.items()})


def small_vec(h, seed):
    coords = {}
    for lab in h.basis.labels:
        seed = seed * 48271 % 2147483647
        coords[lab] = seed % 7 - 3
    return vec(h, coords)


small_coeff = st.integers(min_value=-3, max_value=3)


def poly_strategy(nvars, order, max_degree=3):
    expts = st.tuples(*[st.integers(min_value=0, max_value=max_degree)] * nvars)
    return st.dictionaries(expts, small_coeff, max_size=4).map(
        lambda d: PolyFunction.build(nvars, order, {m: Fraction(c) for m, c in d.items()}))


class TestPolyFunction:
    def test_build_prunes_and_accumulates(self):
        f = PolyFunction.build(2, N, [((1, 0), 2), ((1, 0), -2), ((0, 1), 1)])
        assert f.terms == {(0, 1): SeriesScalar.constant(1, N)}
        assert PolyFunction.build(2, N, {}).is_zero
        assert PolyFunction.constant(0, 2, N).is_zero

    def test_schema_rejections(self):
        with pytest.raises(SchemaError):
            PolyFunction(2, N, {(1,): SeriesScalar.one(N)})
        with pytest.raises(SchemaError):
            PolyFunction(2, N, {(1, 0): Fraction(1)})
        with pytest.raises(SchemaError):
            PolyFunction(2, N, {(1, -1): SeriesScalar.one(N)})
        with pytest.raises(SchemaError):
            PolyFunction.constant(1, 2, N) + PolyFunction.constant(1, 2, N + 1)
        with pytest.raises(SchemaError):
            PolyFunction.constant(1, 2, N) * PolyFunction.constant(1, 3, N)

    def test_degree_truncate_at_zero(self):
        f = PolyFunction.build(2, N, [((2, 1), 1), ((0, 0), 7)])
        assert f.degree == 3
        assert f.truncate(2) == PolyFunction.constant(7, 2, N)
        assert f.at_zero() == SeriesScalar.constant(7, N)
        assert f.truncate(0).degree == 0

    def test_scale_by_hbar_prunes_annihilated_terms(self):
        top = SeriesScalar.make([0, 0, 0, 0, 1], N)
        f = PolyFunction.build(2, N, [((1, 0), top), ((0, 1), 1)])
        g = f.scale(SeriesScalar.hbar(N))
        assert (1, 0) not in g.terms
        assert g.terms[(0, 1)] == SeriesScalar.hbar(N)

    @given(poly_strategy(2, 4), poly_strategy(2, 4), poly_strategy(2, 4))
    @settings(max_examples=40, deadline=None)
    def test_ring_identities(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a - a == PolyFunction.zero(2, 4)

    @given(poly_strategy(2, 4), poly_strategy(2, 4))
    @settings(max_examples=40, deadline=None)
    def test_partial_is_a_derivation(self, a, b):
        for pos in range(2):
            assert (a * b).partial(pos) == a.partial(pos) * b + a * b.partial(pos)


class TestHatFunctions:
    def test_hat_is_linear_coordinates(self):
        h = load("lie2")
        f = hat_function(h, vec(h, {1: 3, 2: -2}), N)
        assert f.terms == {(1, 0): SeriesScalar.constant(3, N),
                           (0, 1): SeriesScalar.constant(-2, N)}
        with pytest.raises(SchemaError):
            hat_function(h, FinVec.unit(load("sl2").basis, 1), N)

    def test_monomial_and_psi_agree(self):
        h = load("heis3")
        assert monomial_function(h, (1, 2, 2), N).terms == {
            (1, 2, 0): SeriesScalar.one(N)}
        f = hat_function(h, vec(h, {1: 1}), N) * hat_function(h, vec(h, {2: 1}), N)
        assert monomial_function(h, (1, 2), N) == f

    def test_psi_is_injective_on_the_window(self):
        # Distinct monomial labels land on distinct single exponent tuples.
        from rackalg.symcoalg import sym_monomials
        h = load("heis3")
        seen = {}
        for mono in sym_monomials(h.basis, 3):
            f = monomial_function(h, mono, N)
            (expt, c), = f.terms.items()
            assert c == SeriesScalar.one(N)
            assert expt not in seen
            seen[expt] = mono

    def test_exp_hat_matches_series_expansion(self):
        h = load("abelian2")
        f = exp_hat(h, vec(h, {1: 1}), N, 3)
        assert f.terms == {(r, 0): SeriesScalar.constant(Fraction(1, math.factorial(r)), N)
                           for r in range(4)}


class TestAdTilde:
    def test_abelian_gives_zero(self):
        h = load("abelian3")
        f = PolyFunction.build(3, N, [((2, 1, 0), 5), ((0, 0, 3), -1)])
        for i in h.basis.labels:
            assert ad_tilde(h, i, f).is_zero

    def test_standard_lie2_values(self):
        h = load("lie2")
        a1 = hat_function(h, vec(h, {1: 1}), N)
        a2 = hat_function(h, vec(h, {2: 1}), N)
        assert ad_tilde(h, 1, a2) == a2
        assert ad_tilde(h, 1, a1).is_zero
        assert ad_tilde(h, 2, a1) == -a2
        assert ad_tilde(h, 2, a2).is_zero

    def test_matches_bracket_on_linear_coordinates(self):
        for name in CORPUS:
            h = load(name)
            x = small_vec(h, 11)
            y = small_vec(h, 23)
            lhs = PolyFunction.zero(h.dim, N)
            for i, c in x.entries.items():
                lhs = lhs + ad_tilde(h, i, hat_function(h, y, N)).scale(c)
            assert lhs == hat_function(h, h.bracket_of(x, y), N)

    @given(poly_strategy(3, 4), poly_strategy(3, 4))
    @settings(max_examples=25, deadline=None)
    def test_derivation_product_rule(self, f, g):
        h = load("sl2")
        for i in h.basis.labels:
            assert ad_tilde(h, i, f * g) == ad_tilde(h, i, f) * g + f * ad_tilde(h, i, g)

    def test_preserves_polynomial_degree(self):
        h = load("sl2")
        f = monomial_function(h, (1, 2, 3), N)
        out = ad_tilde(h, 2, f)
        assert all(sum(m) == 3 for m in out.terms)


class TestStar:
    def test_constant_left_factor_evaluates_at_zero(self):
        h = load("sl2")
        g = PolyFunction.build(3, N, [((1, 1, 0), 2), ((0, 0, 2), -3)])
        f = PolyFunction.constant(Fraction(5, 2), 3, N)
        assert star(h, f, g) == g.scale(Fraction(5, 2))

    def test_lie2_generator_pairing(self):
        h = load("lie2")
        a1 = hat_function(h, vec(h, {1: 1}), N)
        a2 = hat_function(h, vec(h, {2: 1}), N)
        assert star(h, a1, a2) == a2.scale(SeriesScalar.hbar(N))

    def test_linear_coordinates_give_hbar_bracket(self):
        for name in CORPUS:
            h = load(name)
            x = small_vec(h, 5)
            y = small_vec(h, 17)
            got = star(h, hat_function(h, x, N), hat_function(h, y, N))
            want = hat_function(h, h.bracket_of(x, y), N).scale(SeriesScalar.hbar(N))
            assert got == want, name

    def test_hbar_order_tracks_jet_degree(self):
        h = load("sl2")
        g = exp_hat(h, small_vec(h, 29), N, N - 1)
        f = monomial_function(h, (1, 2), N) + monomial_function(h, (3, 3, 3), N)
        out = star(h, f, g)
        # f has jets only in degrees 2 and 3, so only hbar^2 and hbar^3 survive.
        for c in out.terms.values():
            assert c.coeffs[0] == 0 and c.coeffs[1] == 0 and c.coeffs[4] == 0

    def test_jets_at_or_beyond_the_order_vanish(self):
        h = load("sl2")
        f = monomial_function(h, (1,) * N, N)
        g = exp_hat(h, small_vec(h, 3), N, N - 1)
        assert star(h, f, g).is_zero

    def test_schema_rejections(self):
        h = load("lie2")
        f = PolyFunction.constant(1, 2, N)
        with pytest.raises(SchemaError):
            star(h, f, PolyFunction.constant(1, 3, N))
        with pytest.raises(SchemaError):
            star(h, f, PolyFunction.constant(1, 2, N + 1))
        with pytest.raises(SchemaError):
            star(load("sl2"), f, f)


class TestLieRackProduct:
    def test_abelian_fixes_the_right_argument(self):
        h = load("abelian2")
        y = vec(h, {1: 2, 2: -1})
        out = lie_rack_product(h, vec(h, {1: 1}), y, N)
        assert out == FinVec.build(h.basis, {lab: SeriesScalar.constant(c, N)
                                             for lab, c in y.entries.items()})

    def test_lie2_exponential_eigenvector(self):
        h = load("lie2")
        out = lie_rack_product(h, vec(h, {1: 1}), vec(h, {2: 1}), N)
        assert out == FinVec.build(h.basis, {2: series_exp(SeriesScalar.hbar(N))})

    def test_square_fixture_truncates_after_one_step(self):
        h = load("sq2")
        out = lie_rack_product(h, vec(h, {1: 1}), vec(h, {1: 1}), N)
        assert out == FinVec.build(h.basis, {1: SeriesScalar.one(N),
                                             2: SeriesScalar.hbar(N)})

    def test_zero_arguments(self):
        h = load("sl2")
        x = small_vec(h, 7)
        assert lie_rack_product(h, FinVec.zero(h.basis), x, N) == FinVec.build(
            h.basis, {lab: SeriesScalar.constant(c, N) for lab, c in x.entries.items()})
        assert lie_rack_product(h, x, FinVec.zero(h.basis), N).is_zero


class TestStarExp:
    def test_abelian_left_factor_drops_out(self):
        h = load("abelian2")
        y = vec(h, {1: 2})
        out = star_exp(h, vec(h, {1: 3, 2: -1}), y, 4)
        assert out == exp_hat(h, y, 4, 3)

    def test_lie2_frozen_series(self):
        # e^{hbar ad_{e1}} e2 = e^hbar e2, so the product is exp(e^hbar alpha_2).
        h = load("lie2")
        out = star_exp(h, vec(h, {1: 1}), vec(h, {2: 1}), N)
        e = series_exp(SeriesScalar.hbar(N))
        power = SeriesScalar.one(N)
        for d in range(N):
            assert out.terms[(0, d)] == power * Fraction(1, math.factorial(d))
            power = power * e

    def test_self_pairing_all_fixtures(self):
        for name in CORPUS:
            h = load(name)
            x = small_vec(h, 13)
            star_exp(h, x, x, 4)

    def test_random_pairs_all_fixtures(self):
        for name in CORPUS:
            h = load(name)
            for seed in (1, 2, 3):
                star_exp(h, small_vec(h, seed), small_vec(h, seed + 40), 4)

    def test_lower_degree_cap_compares_matching_jets(self):
        h = load("sl2")
        out = star_exp(h, small_vec(h, 9), small_vec(h, 31), 4, degree=2)
        assert out.degree <= 2


class TestExpFunction:
    def test_product_adds_exponents(self):
        h = load("sl2")
        a, b = ExpFunction(small_vec(h, 3), 4), ExpFunction(small_vec(h, 19), 4)
        assert (a * b).vector == a.vector + b.vector
        full = a.expand(h) * b.expand(h)
        assert full.truncate(3) == (a * b).expand(h)

    def test_rack_image_is_the_deformed_product(self):
        h = load("heis3")
        a, b = ExpFunction(small_vec(h, 8), N), ExpFunction(small_vec(h, 21), N)
        assert star(h, a.expand(h), b.expand(h)) == rack_exp(h, a, b).expand(h)

    def test_schema_rejections(self):
        h = load("sl2")
        with pytest.raises(SchemaError):
            ExpFunction(small_vec(h, 1), 4) * ExpFunction(small_vec(h, 1), 5)
        with pytest.raises(SchemaError):
            ExpFunction(small_vec(h, 1), 4) * ExpFunction(small_vec(load("lie2"), 1), 4)


class TestSelfDistributivity:
    def test_zero_right_argument(self):
        h = load("lie2")
        rep = star_rack_selfdist_check(h, vec(h, {1: 1}), vec(h, {2: 1}),
                                       FinVec.zero(h.basis), 4)
        assert rep.passed

    def test_abelian(self):
        h = load("abelian3")
        rep = star_rack_selfdist_check(h, small_vec(h, 1), small_vec(h, 2),
                                       small_vec(h, 3), 4)
        assert rep.passed

    def test_square_fixture_random_triples(self):
        h = load("sq2")
        for seed in (1, 5, 9, 13):
            rep = star_rack_selfdist_check(h, small_vec(h, seed), small_vec(h, seed + 1),
                                           small_vec(h, seed + 2), N)
            assert rep.passed and rep.checked == 2

    def test_remaining_fixtures_one_triple_each(self):
        for name in ("lie2", "heis3"):
            h = load(name)
            assert star_rack_selfdist_check(h, small_vec(h, 4), small_vec(h, 6),
                                            small_vec(h, 10), N).passed

    def test_sl2_full_order(self):
        h = load("sl2")
        rep = star_rack_selfdist_check(h, vec(h, {1: 1, 2: -1}), vec(h, {3: 2}),
                                       vec(h, {1: 1, 3: 1}), 6)
        assert rep.passed

    def test_non_leibniz_bracket_fails_with_witness(self):
        # [e1,e2] = e1 violates the Leibniz identity on the triple (1,2,2).
        bad = LeibnizAlgebra.from_table(2, {(1, 2): {1: 1}}, name="bad2")
        with pytest.raises(LeibnizViolation):
            check_leibniz(bad)
        with pytest.raises(DecompositionFailure) as exc:
            star_rack_selfdist_check(bad, vec(bad, {1: 1}), vec(bad, {2: 1}),
                                     vec(bad, {2: 1}), 4)
        assert exc.value.identity == "rack self-distributivity"

    def test_first_hbar_difference_reports_lowest_power(self):
        a = PolyFunction.build(2, 4, [((1, 0), SeriesScalar.make([1, 0, 2, 0], 4))])
        b = PolyFunction.build(2, 4, [((1, 0), SeriesScalar.make([1, 0, 5, 0], 4))])
        power, row_a, row_b = _first_hbar_difference(a, b)
        assert power == 2
        assert row_a == {(1, 0): Fraction(2)} and row_b == {(1, 0): Fraction(5)}
        assert _first_hbar_difference(a, a) == (-1, {}, {})


class TestHatMorphism:
    def test_square_fixture_full_window(self):
        rep = check_hat_morphism(load("sq2"), 3)
        assert rep.passed and rep.checked == 155

    def test_lie2_full_window(self):
        assert check_hat_morphism(load("lie2"), 3).passed

    def test_heisenberg(self):
        assert check_hat_morphism(load("heis3"), 3).passed

    def test_sl2(self):
        assert check_hat_morphism(load("sl2"), 2).passed
