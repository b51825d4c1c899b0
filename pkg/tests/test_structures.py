"""Structure algebra: garbling actions, L1 norm, scalar products, normal form."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import (TWO_STATES, garblings, info_structures, payoff_structures,
                      rand_garbling, rand_info)
from infodist import fixtures as fx
from infodist.errors import StructureError
from infodist.structures import (Garbling, InfoStructure, PayoffStructure,
                                 canonicalize, garble_p1, garble_p2,
                                 l1_distance, scalar_product, strategy_payoff)

F = Fraction
H = F(1, 2)


def test_entries_must_sum_to_one():
    with pytest.raises(StructureError):
        InfoStructure(TWO_STATES, {(0, 0, 0): H})
    with pytest.raises(StructureError):
        InfoStructure(TWO_STATES, {(0, 0, 0): H, (1, 0, 0): H, (1, 1, 1): H})


def test_payoff_entries_stay_in_unit_interval():
    with pytest.raises(StructureError):
        PayoffStructure(TWO_STATES, 1, {(0, 0, 0): F(3, 2)})
    g = PayoffStructure(TWO_STATES, 2, {(0, 0, 0): 1})
    assert g.value(0, 5, 0) == -1      # row player out of block
    assert g.value(0, 0, 5) == 1       # column player out of block
    assert g.value(0, 7, 9) == 0


def test_identity_garbling_is_neutral():
    for u in (fx.u_complete(), fx.u_partial(), fx.u_ladder(2)):
        assert garble_p1(Garbling.identity(), u) == u
        assert garble_p2(u, Garbling.identity()) == u


def test_constant_garbling_blinds_player_one():
    u = fx.u_complete()
    blind = garble_p1(Garbling.constant([0, 1], 0), u)
    assert blind.support1() == [0]
    assert blind.marginal_kd() == u.marginal_kd()


def test_collapse_on_partial_overlap_structure():
    got = garble_p1(fx.q_collapse_example(), fx.u_partial())
    want = InfoStructure(TWO_STATES, {
        (0, 0, 0): F(1, 4), (0, 1, 1): F(1, 4),
        (1, 1, 0): F(1, 4), (1, 1, 1): F(1, 4)})
    assert got == want


def test_split_acts_on_player_two_side():
    got = garble_p2(fx.u_p1_knows(), fx.q_split_example())
    want = InfoStructure(TWO_STATES, {
        (0, 0, 0): F(1, 4), (0, 0, 1): F(1, 4),
        (1, 1, 0): F(1, 4), (1, 1, 1): F(1, 4)})
    assert got == want
    assert l1_distance(garble_p1(fx.q_collapse_example(), fx.u_partial()), got) == H


@given(info_structures(), garblings())
@settings(max_examples=60)
def test_garbling_preserves_the_untouched_marginal(u, q):
    left = garble_p1(q, u)
    assert sum(left.entries.values()) == 1
    assert left.marginal_kd() == u.marginal_kd()
    right = garble_p2(u, q)
    assert right.marginal_kc() == u.marginal_kc()


def test_l1_examples():
    assert l1_distance(fx.u_p1_knows(), fx.u_p1_knows()) == 0
    assert l1_distance(fx.u_p1_knows(), fx.u_partial()) == 1
    assert l1_distance(fx.u_partial(), fx.u_p2_knows_swapped()) == 1


def test_l1_state_mismatch_rejected():
    other = InfoStructure(("a", "b"), {(0, 0, 0): H, (1, 0, 0): H})
    with pytest.raises(StructureError):
        l1_distance(fx.u_trivial(), other)


def test_scalar_product_examples():
    zero = PayoffStructure(TWO_STATES, 3, {})
    assert scalar_product(zero, fx.u_partial()) == 0
    assert scalar_product(fx.g_basic(), fx.u_complete()) == 0
    # signals outside the block hit the conceding convention
    small_zero = PayoffStructure(TWO_STATES, 2, {})
    assert scalar_product(small_zero, fx.u_partial()) == -F(1, 4)


@given(info_structures(), info_structures(), payoff_structures())
@settings(max_examples=40)
def test_scalar_product_is_bilinear(u, v, g):
    alpha = F(1, 3)
    mix = InfoStructure(TWO_STATES, {
        key: alpha * u.entries.get(key, F(0)) + (1 - alpha) * v.entries.get(key, F(0))
        for key in u.entries.keys() | v.entries.keys()})
    assert scalar_product(g, mix) == \
        alpha * scalar_product(g, u) + (1 - alpha) * scalar_product(g, v)


@given(info_structures(), garblings(), garblings())
@settings(max_examples=40)
def test_scalar_product_of_double_garbling_is_the_game_payoff(u, q1, q2):
    g = fx.g_basic()
    both = garble_p2(garble_p1(q1, u), q2)
    assert scalar_product(g, both) == strategy_payoff(u, g, q1, q2)


@given(info_structures(), info_structures())
@settings(max_examples=30)
def test_l1_is_the_sign_pattern_maximum(u, v):
    # enumerate payoff blocks with entries in {-1, +1} over the union support
    span = max(u.alphabet_size(), v.alphabet_size())
    cells = [(k, c, d) for k in range(2) for c in range(span) for d in range(span)]
    best = None
    for signs in itertools.product((F(-1), F(1)), repeat=len(cells)):
        g = PayoffStructure(TWO_STATES, span, dict(zip(cells, signs)))
        val = scalar_product(g, u) - scalar_product(g, v)
        best = val if best is None else max(best, val)
    assert best == l1_distance(u, v)


def test_canonicalize_identifies_relabelings():
    up2, upp2 = fx.u_p2_knows(), fx.u_p2_knows_swapped()
    assert canonicalize(up2) == canonicalize(upp2)
    assert canonicalize(up2) != canonicalize(fx.u_p1_knows())
    u2_swapped = fx.u_p1_knows().relabel({0: 1, 1: 0}, {})
    assert canonicalize(u2_swapped) == canonicalize(fx.u_p1_knows())


def test_canonicalize_idempotent_on_fixtures():
    for u in (fx.u_complete(), fx.u_p1_knows(), fx.u_partial(),
              fx.u_ladder(3), fx.u_trivial()):
        c = canonicalize(u)
        assert canonicalize(c) == c


def test_canonicalize_random_relabel_invariance():
    rng = random.Random(5)
    for _ in range(25):
        u = rand_info(rng, max_sig1=3, max_sig2=3)
        sig1, sig2 = u.support1(), u.support2()
        perm1 = dict(zip(sig1, rng.sample(range(6), len(sig1))))
        perm2 = dict(zip(sig2, rng.sample(range(6), len(sig2))))
        assert canonicalize(u.relabel(perm1, perm2)) == canonicalize(u)
