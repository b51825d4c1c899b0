"""Finite-order types: partitions, refinement, stabilization, invariance."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import TWO_STATES, info_structures, rand_info
from infodist import fixtures as fx
from infodist.beliefs import (belief_partition, hierarchy_distribution,
                              hierarchy_equal, stabilization_order)
from infodist.distance import compare
from infodist.errors import StructureError
from infodist.structures import InfoStructure, garble_p2

F = Fraction
H = F(1, 2)


def test_complete_information_first_order_partition():
    part = belief_partition(fx.u_complete(), 1, 1)
    assert set(part.classes) == {(0,), (1,)}
    # the two signals pin distinct states
    assert part.fingerprints[0] != part.fingerprints[1]


def test_uniform_first_order_but_distinct_second_order():
    # in the two-rung ladder both signals of player 1 carry the uniform
    # first-order belief yet different beliefs about player 2's knowledge
    u = fx.u_ladder(1)
    assert belief_partition(u, 1, 1).classes == ((0, 1),)
    assert set(belief_partition(u, 1, 2).classes) == {(0,), (1,)}


def test_ladder_middle_signals_agree_to_third_order():
    u = fx.u_ladder(3)
    for order in (1, 2, 3):
        part = belief_partition(u, 1, order)
        cls = next(c for c in part.classes if 1 in c)
        assert 2 in cls
    part4 = belief_partition(u, 1, 4)
    cls = next(c for c in part4.classes if 1 in c)
    assert 2 not in cls


def test_refinement_chain_and_stabilization():
    rng = random.Random(71)
    for _ in range(10):
        u = rand_info(rng, max_sig1=3, max_sig2=3)
        for player in (1, 2):
            for order in (1, 2, 3):
                finer = belief_partition(u, player, order + 1)
                assert finer.refines(belief_partition(u, player, order))
    stable = stabilization_order(fx.u_ladder(3))
    assert stable == 4
    for extra in (1, 2):
        assert belief_partition(fx.u_ladder(3), 1, stable + extra).classes == \
            belief_partition(fx.u_ladder(3), 1, stable).classes


def test_hierarchy_distribution_examples():
    u = fx.u_p1_knows()
    for order in (1, 2, 3):
        assert hierarchy_equal(u, u, order)
    relabeled = fx.u_p2_knows_swapped()
    for order in (1, 2, 3):
        assert hierarchy_equal(fx.u_p2_knows(), relabeled, order)
    assert not hierarchy_equal(fx.u_p1_knows(), fx.u_p2_knows(), 1)


def test_equivalent_structures_have_equal_hierarchies():
    u = fx.u_p1_knows()
    padded = garble_p2(u, fx.q_split_example())
    assert compare(u, padded).direction == "equivalent"
    top = stabilization_order(u) + 1
    for order in range(1, top + 1):
        assert hierarchy_equal(u, padded, order)


def test_hierarchy_atoms_sum_to_one():
    rng = random.Random(73)
    for _ in range(10):
        u = rand_info(rng, max_sig1=3, max_sig2=2)
        h = hierarchy_distribution(u, 3)
        assert sum(p for (_, _, _, p) in h.atoms) == 1


def test_order_must_be_positive():
    with pytest.raises(StructureError):
        belief_partition(fx.u_trivial(), 1, 0)
    with pytest.raises(StructureError):
        hierarchy_equal(fx.u_trivial(),
                        InfoStructure(("x", "y"), {(0, 0, 0): H, (1, 0, 0): H}), 1)
