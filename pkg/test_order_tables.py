#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
位数公式の表のテスト
"""

import pytest

from errors import BadType
from exact_linalg import QPoly, QuadNum, poly_eval
from order_tables import VERIFICATION_KEYS, normalize_key, root_count, self_consistent, table_row

y = QPoly.monomial(1)


@pytest.mark.parametrize("key", list(VERIFICATION_KEYS) + ["E7", "E8", "A8", "D8"])
def test_rows_are_self_consistent(key):
    assert self_consistent(key)


@pytest.mark.parametrize(
    "key,expected",
    [
        ("A1", y * (y**2 - 1)),
        ("2A2", y**3 * (y**2 - 1) * (y**3 + 1)),
        ("G2", y**6 * (y**2 - 1) * (y**6 - 1)),
        ("2B2", y**4 * (y**2 - 1) * (y**4 + 1)),
        ("2D4", y**12 * (y**2 - 1) * (y**4 - 1) * (y**6 - 1) * (y**4 + 1)),
    ],
)
def test_explicit_rows(key, expected):
    assert table_row(key) == expected


def test_3d4_row():
    row = table_row("3D4")
    assert row == y**12 * (y**2 - 1) * (y**6 - 1) * (y**8 + y**4 + 1)
    assert poly_eval(row, QuadNum(2)) == 211341312


def test_2f4_at_sqrt2():
    assert poly_eval(table_row("2F4"), QuadNum.sqrt_prime(2)) == 35942400


@pytest.mark.parametrize(
    "key,normalized",
    [("B2", "C2"), ("C2", "C2"), ("2C2", "2B2"), ("2B2", "2B2"), ("D3", "A3"), ("2D3", "2A3"), ("E6", "E6")],
)
def test_normalize_key(key, normalized):
    assert normalize_key(key) == normalized


def test_root_counts():
    assert root_count("E7") == 126
    assert root_count("B5") == 50
    assert root_count("D3") == 12


@pytest.mark.parametrize("key", ["2G3", "3A2", "2B4", "H3"])
def test_missing_rows(key):
    with pytest.raises(BadType):
        table_row(key)
