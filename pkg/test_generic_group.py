#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
完全ルートデータと位数多項式のテスト
"""

import pytest

from cartan import parse_type
from errors import BadParams, BadType, CapExceeded, DoesNotNormalizeW, MixedRadicand, NotFiniteOrder, NotSteinberg, QNotInP
from exact_linalg import QPoly, QuadMat, QuadNum, int_mat
from generic_group import (
    central_torus_factor,
    complete_product,
    dual_complete,
    ennola,
    fixed_points,
    from_isogeny,
    group_order,
    make_complete,
    order_polynomial,
    order_polynomial_bn,
    order_polynomial_molien,
    p_set_contains,
    restriction_of_scalars,
    standard_complete,
    table_check,
    tori_count_identity,
    toric_order,
    twist_label,
    type_key,
    weyl_element,
    _weyl,
)
from isogeny import exceptional_catalog, from_permutation, scalar_isogeny, validate_isogeny
from order_tables import SLOW_KEYS, VERIFICATION_KEYS, table_row
from rootdatum import build_datum, gl_datum, standard_datum, toric_datum

FAST_KEYS = [k for k in VERIFICATION_KEYS if k not in SLOW_KEYS]
ALL_KEYS = [pytest.param(k, marks=pytest.mark.slow) if k in SLOW_KEYS else k for k in VERIFICATION_KEYS]
SMALL_RANK_KEYS = [k for k in FAST_KEYS if parse_type(k)[2] <= 3]


def gl_complete(n):
    D = gl_datum(n)
    return make_complete(D, QuadMat.identity(D.rank), f"GL{n}")


def strange_pair(m):
    D = build_datum([[2, 0], [0, 1]], [[1, 0], [0, 2]])
    a = 2**m
    return validate_isogeny(D, D, 2, int_mat([[0, a], [a, 0]]), int_mat([[0, a // 2], [2 * a, 0]]))


class TestMakeComplete:
    def test_identity_is_case_one(self):
        crd = standard_complete("A3")
        assert crd.case == "I"
        assert crd.base_perm == (0, 1, 2)
        assert crd.order == 1
        assert twist_label(crd) == "untwisted"

    def test_non_base_preserving_input_is_normalized(self):
        D = standard_datum("A2")
        crd = make_complete(D, QuadMat.from_int(D.weyl_matrix((0,))))
        assert crd.phi0.is_identity()

    def test_minus_one_on_a2_becomes_the_flip(self):
        D = standard_datum("A2")
        crd = make_complete(D, -QuadMat.identity(2))
        assert crd.base_perm == (1, 0)
        assert type_key(crd) == "2A2"

    def test_suzuki_kappa(self):
        crd = standard_complete("2B2")
        assert crd.case == "II" and crd.radicand == 2
        assert set(crd.kappa) == {QuadNum(0, 1, 2, 2), QuadNum.sqrt_prime(2)}
        assert twist_label(crd) == "very-twisted"
        assert crd.to_dict()["case"] == "II(2)"

    def test_infinite_order(self):
        with pytest.raises(NotFiniteOrder):
            make_complete(toric_datum(2), int_mat([[2, 1], [1, 1]]))

    def test_roots_not_preserved(self):
        with pytest.raises(DoesNotNormalizeW):
            make_complete(gl_datum(2), int_mat([[1, 0], [0, -1]]))

    def test_singular(self):
        with pytest.raises(BadParams):
            make_complete(gl_datum(2), int_mat([[1, 1], [1, 1]]))

    def test_wrong_size(self):
        with pytest.raises(BadParams):
            make_complete(gl_datum(2), int_mat([[1]]))

    def test_rank_zero_has_order_one(self):
        crd = make_complete(toric_datum(0), QuadMat.identity(0))
        assert crd.order == 1
        assert crd.case == "I"


class TestFromIsogeny:
    def test_strange_pair(self):
        crd, q = from_isogeny(strange_pair(1))
        assert q == QuadNum(2)
        assert crd.phi0.mat == int_mat([[0, 1], [1, 0]])
        assert crd.order == 2
        assert crd.case == "II" and crd.radicand == 2
        assert set(crd.kappa) == {QuadNum(1, 0, 0, 2), QuadNum(2)}

    def test_suzuki(self):
        _, q = from_isogeny(exceptional_catalog("C2", 0))
        assert q == QuadNum.sqrt_prime(2)

    def test_ree(self):
        _, q = from_isogeny(exceptional_catalog("G2", 0))
        assert q == QuadNum.sqrt_prime(3)

    def test_frobenius(self):
        crd, q = from_isogeny(scalar_isogeny(standard_datum("B2"), 3))
        assert q == QuadNum(3)
        assert crd.case == "I"

    def test_automorphism_is_not_steinberg(self):
        with pytest.raises(NotSteinberg):
            from_isogeny(from_permutation(standard_datum("A3"), (2, 1, 0)))


class TestStandardComplete:
    @pytest.mark.parametrize("key", ["2A3", "2D4", "3D4", "2B2", "2G2", "G2", "C3"])
    def test_type_key_round_trip(self, key):
        assert type_key(standard_complete(key)) == key

    def test_b2_uses_the_c2_row(self):
        assert type_key(standard_complete("B2")) == "C2"

    def test_unknown_twist(self):
        with pytest.raises(BadType):
            standard_complete("2B3")

    def test_triality_has_order_three(self):
        assert standard_complete("3D4").order == 3


class TestOrderPolynomial:
    @pytest.mark.parametrize("key", FAST_KEYS)
    def test_bn_matches_table(self, key):
        crd = standard_complete(key)
        computed = order_polynomial_bn(crd).poly.exact_div(central_torus_factor(crd))
        assert computed == table_row(key)

    @pytest.mark.parametrize("key", ALL_KEYS)
    def test_molien_matches_bn(self, key):
        crd = standard_complete(key)
        assert order_polynomial_molien(crd).poly == order_polynomial_bn(crd).poly

    @pytest.mark.slow
    @pytest.mark.parametrize("key", sorted(SLOW_KEYS))
    def test_e6_rows(self, key):
        assert table_check(standard_complete(key)).match

    def test_suzuki_polynomial(self):
        result = order_polynomial(standard_complete("2B2"))
        y = QPoly.monomial(1)
        assert result.poly == y**4 * (y**2 - 1) * (y**4 + 1)
        assert result.factored.y_power == 4

    def test_both_methods(self):
        result = order_polynomial(standard_complete("2A2"), method="both")
        assert result.source == "both"

    def test_unknown_method(self):
        with pytest.raises(BadParams):
            order_polynomial(standard_complete("A1"), method="exact")

    def test_gl2(self):
        y = QPoly.monomial(1)
        assert order_polynomial(gl_complete(2)).poly == y * (y - 1) * (y**2 - 1)

    def test_fixed_points_of_the_flip(self):
        crd = standard_complete("2A2")
        W = _weyl(crd.datum, 1000)
        assert sorted(W.lengths[i] for i in fixed_points(crd, W)) == [0, 3]

    def test_table_fallback_over_cap(self):
        crd = standard_complete("G2")
        fallback = order_polynomial(crd, cap=5)
        assert fallback.source == "table"
        assert fallback.poly == order_polynomial(crd).poly

    def test_cap_without_table_row(self):
        crd = complete_product(standard_complete("A1"), standard_complete("A1"))
        with pytest.raises(CapExceeded):
            order_polynomial(crd, cap=1)

    def test_coordinates_beyond_64_bits(self):
        D = build_datum([[1, 10**19]], [[2, 0]])
        crd = make_complete(D, QuadMat.identity(2))
        y = QPoly.monomial(1)
        result = order_polynomial(crd, method="both")
        assert result.poly == y * (y - 1) ** 2 * (y + 1)
        W = _weyl(D, 10)
        assert list(fixed_points(crd, W)) == [0, 1]


class TestTori:
    def test_coxeter_torus(self):
        crd = standard_complete("A2")
        assert toric_order(crd, "12") == QPoly.from_coeffs([1, 1, 1])

    @pytest.mark.parametrize("key", SMALL_RANK_KEYS)
    def test_torus_orders_divide_the_group_order(self, key):
        crd = standard_complete(key)
        order = order_polynomial(crd).poly
        W = _weyl(crd.datum, 100000)
        for word in W.words:
            torus = toric_order(crd, word)
            assert torus.degree() == crd.datum.rank
            assert torus.divides(order)

    @pytest.mark.parametrize("key", ["A1", "A2", "G2", "2A3", "2B2", "2G2"])
    def test_counting_identity(self, key):
        assert tori_count_identity(standard_complete(key))

    def test_word_out_of_range(self):
        with pytest.raises(BadParams):
            weyl_element(standard_complete("A2"), "13")

    def test_matrix_and_tuple_forms(self):
        crd = standard_complete("A2")
        assert weyl_element(crd, (0, 1)) == weyl_element(crd, "12")
        assert weyl_element(crd, [[1, 0], [0, 1]]) == int_mat([[1, 0], [0, 1]])


class TestEnnola:
    @pytest.mark.parametrize("key", ["A1", "A2", "B2", "2A3", "3D4", "2B2", "G2"])
    def test_order_at_minus_y(self, key):
        crd = standard_complete(key)
        n = crd.datum.rank
        expected = order_polynomial(crd).poly.compose_neg() * (-1) ** n
        assert order_polynomial(ennola(crd)).poly == expected

    def test_gl3_goes_to_unitary(self):
        report = table_check(ennola(gl_complete(3)))
        assert report.key == "2A2"
        assert report.match
        assert report.central_factor == QPoly.from_coeffs([1, 1])

    def test_name_toggles(self):
        crd = standard_complete("A2")
        assert ennola(crd).name == "A2⁻"
        assert ennola(ennola(crd)).name == "A2"


class TestDual:
    @pytest.mark.parametrize("key", ["B3", "2B2", "2A2", "3D4"])
    def test_dual_has_the_same_order(self, key):
        crd = standard_complete(key)
        assert order_polynomial(dual_complete(crd)).poly == order_polynomial(crd).poly

    def test_dual_of_suzuki_lives_on_b2(self):
        dual = dual_complete(standard_complete("2B2"))
        assert type_key(dual) == "2B2"
        assert dual.case == "II"


class TestPSet:
    def test_case_one(self):
        crd = standard_complete("F4")
        assert p_set_contains(crd, 7)
        assert p_set_contains(crd, 8)
        assert not p_set_contains(crd, 6)
        assert not p_set_contains(crd, 1)

    def test_suzuki(self):
        crd = standard_complete("2B2")
        assert not p_set_contains(crd, 2)
        assert p_set_contains(crd, QuadNum.sqrt_prime(2))
        assert p_set_contains(crd, QuadNum.parse("2^3/2"))
        assert not p_set_contains(crd, 1)

    def test_strange_pair(self):
        crd, _ = from_isogeny(strange_pair(1))
        assert p_set_contains(crd, 2)
        assert not p_set_contains(crd, 3)

    def test_non_positive(self):
        with pytest.raises(BadParams):
            p_set_contains(standard_complete("A1"), -2)


class TestGroupOrder:
    @pytest.mark.parametrize(
        "key,q,order",
        [
            ("A1", 5, 120),
            ("A1", 2, 6),
            ("A2", 2, 168),
            ("G2", 2, 12096),
            ("2A2", 3, 6048),
            ("2B2", QuadNum.sqrt_prime(2), 20),
            ("2B2", QuadNum.parse("2^3/2"), 29120),
            ("2G2", QuadNum.sqrt_prime(3), 1512),
        ],
    )
    def test_known_orders(self, key, q, order):
        assert group_order(standard_complete(key), q) == order

    def test_molien_gives_the_same_number(self):
        crd = standard_complete("B2")
        assert group_order(crd, 3, "molien") == group_order(crd, 3) == 51840

    def test_q_outside_the_parameter_set(self):
        with pytest.raises(QNotInP):
            group_order(standard_complete("2B2"), 2)


class TestConstructions:
    def test_restriction_of_scalars(self):
        y = QPoly.monomial(1)
        crd = restriction_of_scalars(standard_complete("A1"), 2)
        assert crd.order == 2
        assert order_polynomial(crd).poly == y**2 * (y**4 - 1)

    @pytest.mark.parametrize("key,r", [("2A2", 2), ("A1", 3), ("G2", 2)])
    def test_restriction_substitutes_y_to_the_r(self, key, r):
        crd = standard_complete(key)
        restricted = order_polynomial(restriction_of_scalars(crd, r)).poly
        assert restricted == order_polynomial(crd).poly.compose_power(r)

    def test_restriction_by_one_is_the_same(self):
        crd = standard_complete("2A2")
        assert order_polynomial(restriction_of_scalars(crd, 1)).poly == order_polynomial(crd).poly

    def test_restriction_needs_positive_r(self):
        with pytest.raises(BadParams):
            restriction_of_scalars(standard_complete("A1"), 0)

    def test_product_multiplies_orders(self):
        a1 = standard_complete("A1")
        torus = make_complete(toric_datum(1), QuadMat.identity(1))
        product = complete_product(a1, torus)
        expected = order_polynomial(a1).poly * order_polynomial(torus).poly
        assert order_polynomial(product).poly == expected

    def test_product_of_different_radicands(self):
        with pytest.raises(MixedRadicand):
            complete_product(standard_complete("2B2"), standard_complete("2G2"))

    def test_table_check_report(self):
        report = table_check(standard_complete("2D4"))
        assert report.match
        assert report.to_dict()["type"] == "2D4"
