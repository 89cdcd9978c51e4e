#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Cartan 行列の検証・分類・基本群のテスト
"""

import itertools
import random

import pytest

from cartan import (
    cartan_isomorphisms,
    classify,
    diagram_automorphisms,
    dynkin_diagram,
    fundamental_group,
    parse_type,
    sc_center_generators,
    standard_cartan,
    validate_cartan,
    weyl_group_order_of,
)
from errors import BadRank, BadType, NotCartan
from exact_linalg import block_diag, int_mat
from order_tables import FUNDAMENTAL_KEYS, expected_fundamental_group

CATALOG = ["A1", "A2", "A5", "A8", "B3", "B8", "C3", "C5", "D4", "D5", "D8", "E6", "E7", "E8", "F4", "G2"]


class TestValidate:
    def test_g2_is_valid(self):
        C = validate_cartan([[2, -1], [-3, 2]])
        assert [t.name for t in classify(C)] == ["G2"]

    def test_affine_a1_is_indefinite(self):
        with pytest.raises(NotCartan) as info:
            validate_cartan([[2, -2], [-2, 2]])
        assert info.value.kind == "indefinite"

    def test_rank_one(self):
        assert [t.name for t in classify(validate_cartan([[2]]))] == ["A1"]

    @pytest.mark.parametrize(
        "rows",
        [
            [[2, 1], [1, 2]],
            [[3, -1], [-1, 2]],
            [[2, -1], [0, 2]],
        ],
    )
    def test_c1_failures(self, rows):
        with pytest.raises(NotCartan) as info:
            validate_cartan(rows)
        assert info.value.kind == "C1"

    def test_affine_a2_cycle_is_rejected(self):
        with pytest.raises(NotCartan):
            validate_cartan([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])


class TestStandard:
    def test_a3_is_tridiagonal(self):
        assert standard_cartan("A3").rows() == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]

    def test_c2_and_b2(self):
        assert standard_cartan("C2").rows() == [[2, -1], [-2, 2]]
        assert standard_cartan("B2").rows() == [[2, -2], [-1, 2]]

    @pytest.mark.parametrize("label", ["E9", "G3", "D2", "F5"])
    def test_bad_rank(self, label):
        with pytest.raises(BadRank):
            standard_cartan(label)

    def test_unknown_type(self):
        with pytest.raises(BadType):
            parse_type("H3")

    @pytest.mark.parametrize("label", CATALOG)
    def test_classify_round_trip(self, label):
        assert [t.name for t in classify(standard_cartan(label))] == [label]

    def test_small_coincidences_are_normalized(self):
        assert [t.name for t in classify(standard_cartan("B2"))] == ["C2"]
        assert [t.name for t in classify(standard_cartan("D3"))] == ["A3"]


def test_block_diagonal_components_are_sorted():
    C = validate_cartan(block_diag(standard_cartan("G2").entries, standard_cartan("A1").entries))
    labels = classify(C)
    assert [t.name for t in labels] == ["A1", "G2"]
    assert labels[0].node_map == (2,)


def test_random_relabelling_is_still_classified():
    rng = random.Random(7)
    C = block_diag(standard_cartan("B3").entries, standard_cartan("A2").entries)
    rows = [[int(C[i, j]) for j in range(5)] for i in range(5)]
    for _ in range(5):
        perm = list(range(5))
        rng.shuffle(perm)
        permuted = [[rows[perm[i]][perm[j]] for j in range(5)] for i in range(5)]
        assert sorted(t.name for t in classify(validate_cartan(permuted))) == ["A2", "B3"]


def test_dynkin_edges_of_f4():
    diagram = dynkin_diagram(standard_cartan("F4"))
    bonds = sorted(edge.bond for edge in diagram.edges)
    assert bonds == [1, 1, 2]
    assert {edge.m for edge in diagram.edges} == {3, 4}


@pytest.mark.parametrize("label", FUNDAMENTAL_KEYS)
def test_fundamental_group_table(label):
    assert fundamental_group(standard_cartan(label)) == expected_fundamental_group(label)


def test_fundamental_group_keys_cover_every_type_up_to_rank_8():
    assert len(FUNDAMENTAL_KEYS) == 33
    assert {"A8", "B8", "C2", "D3", "E8", "F4", "G2"} <= set(FUNDAMENTAL_KEYS)
    assert "E9" not in FUNDAMENTAL_KEYS and "D2" not in FUNDAMENTAL_KEYS


def test_fundamental_group_examples():
    assert fundamental_group(standard_cartan("E6")) == [3]
    assert fundamental_group(standard_cartan("G2")) == []
    assert fundamental_group(standard_cartan("D5")) == [4]


class TestAutomorphisms:
    def test_a3(self):
        assert sorted(diagram_automorphisms(standard_cartan("A3"))) == [(0, 1, 2), (2, 1, 0)]

    def test_d4_has_six(self):
        assert len(diagram_automorphisms(standard_cartan("D4"))) == 6

    def test_g2_rigid(self):
        assert diagram_automorphisms(standard_cartan("G2")) == [(0, 1)]

    def test_matches_brute_force_on_d4(self):
        C = standard_cartan("D4")
        rows = C.rows()
        brute = [
            pi
            for pi in itertools.permutations(range(4))
            if all(rows[pi[s]][pi[t]] == rows[s][t] for s in range(4) for t in range(4))
        ]
        assert sorted(cartan_isomorphisms(C, C)) == sorted(brute)


def test_weyl_group_orders():
    assert weyl_group_order_of(standard_cartan("E6")) == 51840
    assert weyl_group_order_of(standard_cartan("B3")) == 48
    assert weyl_group_order_of(validate_cartan(int_mat([[2, 0], [0, 2]]))) == 4


def test_sc_center_of_a1_and_e6():
    assert [order for _, order in sc_center_generators(standard_cartan("A1"))] == [2]
    assert [order for _, order in sc_center_generators(standard_cartan("E6"))] == [3]
    assert sc_center_generators(standard_cartan("E8")) == []
