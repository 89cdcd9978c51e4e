#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
厳密な線形代数・二次体・多項式のテスト
"""

from fractions import Fraction

import pytest
from sympy import ImmutableMatrix

from errors import BadParams, ConsistencyFailure, MixedRadicand
from exact_linalg import (
    ONE,
    QPoly,
    QuadMat,
    QuadNum,
    char_poly,
    cokernel_invariants,
    cyclotomic_factor,
    det,
    int_mat,
    kernel_basis,
    nearest_translate,
    poly_eval,
    reduce_basis,
    smith_normal_form,
    solve_integer_system,
)


def test_int_mat_rejects_fractions_and_ragged_rows():
    with pytest.raises(BadParams):
        int_mat([[1, 2], [3]])
    with pytest.raises(BadParams):
        int_mat(ImmutableMatrix([[Fraction(1, 2)]]))
    assert int_mat([], cols=3).shape == (0, 3)


def test_smith_normal_form_of_cartan_a3():
    C = int_mat([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    snf = smith_normal_form(C)
    assert snf.invariant_factors == (1, 1, 4)
    assert snf.U * C * snf.V == snf.S
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1


def test_cokernel_invariants_free_and_torsion():
    # GL3 の A: 差のベクトル2本、Z^3 / span は Z
    assert cokernel_invariants(int_mat([[1, -1, 0], [0, 1, -1]])) == (1, [])
    assert cokernel_invariants(int_mat([[2]])) == (0, [2])
    assert cokernel_invariants(int_mat([], cols=2), ambient=2) == (2, [])


def test_kernel_basis_is_annihilated():
    m = int_mat([[1, 2, 3], [2, 4, 6]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert m * ImmutableMatrix(list(v)) == ImmutableMatrix([0, 0])


def test_solve_integer_system_detects_no_integer_solution():
    assert solve_integer_system(int_mat([[2, 0], [0, 2]]), [1, 0]) is None
    x0, kernel = solve_integer_system(int_mat([[1, 1]]), [3])
    assert sum(x0) == 3
    assert len(kernel) == 1 and sum(kernel[0]) == 0


def test_reduce_basis_and_nearest_translate():
    basis = reduce_basis([(1, 0, 0), (7, 1, 0)])
    assert all(max(abs(x) for x in v) <= 1 for v in basis)
    x = nearest_translate((10, 0, 0), [(1, 0, 0)])
    assert x == (0, 0, 0)


class TestQuadNum:
    def test_normalization_and_arithmetic(self):
        r2 = QuadNum.sqrt_prime(2)
        assert r2 * r2 == 2
        assert (r2 + 1) * (r2 - 1) == 1
        assert QuadNum(2, 0, 0, 4) == QuadNum(1, 0, 0, 2)
        assert r2.inverse() == QuadNum(0, 1, 2, 2)

    def test_sign_of_mixed_terms(self):
        assert QuadNum(1, -1, 2).sign() < 0
        assert QuadNum(3, -2, 2).sign() > 0
        assert QuadNum(-3, 2, 2).sign() < 0

    def test_mixed_radicands_raise(self):
        with pytest.raises(MixedRadicand):
            QuadNum.sqrt_prime(2) + QuadNum.sqrt_prime(3)
        with pytest.raises(MixedRadicand):
            QuadNum.sqrt_prime(4)

    @pytest.mark.parametrize(
        "text,expected",
        [("7", QuadNum(7)), ("2^3", QuadNum(8)), ("2^1/2", QuadNum(0, 1, 2)), ("2^3/2", QuadNum(0, 2, 2))],
    )
    def test_parse(self, text, expected):
        assert QuadNum.parse(text) == expected

    def test_parse_rejects_other_denominators(self):
        with pytest.raises(BadParams):
            QuadNum.parse("2^1/3")
        with pytest.raises(BadParams):
            QuadNum.parse("6^1/2")

    def test_power_string(self):
        assert QuadNum.parse("2^3/2").to_power_string() == "2^3/2"
        assert QuadNum(9).to_power_string() == "3^2"
        assert QuadNum(6).to_power_string() == "6"

    def test_prime_power_exponent(self):
        assert QuadNum(0, 1, 2, 2).prime_power_exponent() == (2, -1)
        assert QuadNum(8).prime_power_exponent() == (2, 6)
        assert QuadNum(6).prime_power_exponent() is None


class TestQuadMat:
    def test_canonical_form(self):
        m = QuadMat.from_entries([[0, 2], [4, 0]])
        assert m.scalar == 2
        assert m.mat == ImmutableMatrix([[0, 1], [2, 0]])
        assert QuadMat(QuadNum(-1), ImmutableMatrix([[-1, 0], [0, -1]])).scalar == 1

    def test_inverse_and_power(self):
        r2 = QuadNum.sqrt_prime(2)
        phi = QuadMat(r2.inverse(), ImmutableMatrix([[0, 1], [2, 0]]))
        assert (phi @ phi.inverse()).is_identity()
        assert phi.power(2).is_identity()

    def test_from_entries_rejects_incommensurable_entries(self):
        r2 = QuadNum.sqrt_prime(2)
        with pytest.raises(MixedRadicand):
            QuadMat.from_entries([[1, 0], [0, r2]])

    def test_block_diag(self):
        a = QuadMat.from_entries([[QuadNum(1, 0, 0, 2)]])
        b = QuadMat.from_int(ImmutableMatrix([[3]]))
        block = QuadMat.block_diag(a, b)
        assert block.entries() == [[QuadNum(1, 0, 0, 2), 0], [0, 3]]


class TestQPoly:
    def test_arithmetic_and_division(self):
        y = QPoly.monomial(1)
        f = (y - 1) * (y + 1)
        assert f == QPoly.from_coeffs([-1, 0, 1])
        assert f.exact_div(y - 1) == y + 1
        with pytest.raises(ConsistencyFailure):
            f.exact_div(y - 2)

    def test_compose(self):
        f = QPoly.from_coeffs([1, 2, 3])
        assert f.compose_neg() == QPoly.from_coeffs([1, -2, 3])
        assert f.compose_power(2) == QPoly.from_coeffs([1, 0, 2, 0, 3])

    def test_evaluation_at_irrational_point(self):
        f = QPoly.from_coeffs([0, 0, 0, 0, 1]) * QPoly.from_coeffs([-1, 0, 1]) * QPoly.from_coeffs([1, 0, 0, 0, 1])
        assert poly_eval(f, QuadNum.sqrt_prime(2)) == 20


def test_char_poly_of_irrational_matrix():
    r2 = QuadNum.sqrt_prime(2)
    m = QuadMat.from_entries([[0, r2.inverse()], [r2, 0]])
    assert char_poly(m) == QPoly.from_coeffs([-1, 0, 1])


def test_char_poly_of_integer_matrix():
    assert char_poly(int_mat([[0, -1], [1, 0]])) == QPoly.from_coeffs([1, 0, 1])
    assert char_poly(int_mat([[1, 0], [0, 1]])).leading() == ONE


class TestCyclotomicFactor:
    def test_order_polynomial_of_sl2(self):
        f = QPoly.from_coeffs([0, -1, 0, 1])
        fac = cyclotomic_factor(f)
        assert fac.y_power == 1
        assert fac.multiplicities() == {1: 1, 2: 1}
        assert fac.expand() == f
        assert fac.to_str() == "y·Φ1·Φ2"

    def test_remainder_is_kept(self):
        fac = cyclotomic_factor(QPoly.from_coeffs([-2, 0, 1]))
        assert fac.remainder is not None
        assert fac.expand() == QPoly.from_coeffs([-2, 0, 1])

    def test_rejects_non_integral(self):
        with pytest.raises(BadParams):
            cyclotomic_factor(QPoly.from_coeffs([QuadNum(1, 0, 0, 2), 1]))
