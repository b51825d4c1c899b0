"""Game values: regressions, certificates, reductions, the one-player case."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import (TWO_STATES, garblings, info_structures, payoff_structures,
                      rand_garbling, rand_info, rand_payoff)
from infodist import fixtures as fx
from infodist.errors import StructureError
from infodist.game import (BehaviorStrategy, bayesian_value,
                           best_response_value, decision_value,
                           matrix_game_value, normal_form_matrix)
from infodist.lp import frac
from infodist.structures import (Garbling, InfoStructure, PayoffStructure,
                                 garble_p1, garble_p2, l1_distance,
                                 scalar_product, strategy_payoff)

F = Fraction


def test_value_regressions():
    g = fx.g_basic()
    assert bayesian_value(fx.u_complete(), g)[0] == 0
    assert bayesian_value(fx.u_p1_knows(), g)[0] == F(1, 5)
    assert bayesian_value(fx.u_ladder(3), g)[0] == F(1, 10)


def test_returned_strategies_are_certified_optimal():
    for u in (fx.u_complete(), fx.u_p1_knows(), fx.u_ladder(2), fx.u_partial()):
        for g in (fx.g_basic(), fx.g_reveal()):
            value, sigma, tau = bayesian_value(u, g)
            assert best_response_value(u, g, sigma) == value
            assert best_response_value(u, g, tau) == value


def test_best_response_against_known_strategies():
    # play the second row after signal 0 and the first after signal 1
    fixed = BehaviorStrategy(1, {0: {1: F(1)}, 1: {0: F(1)}})
    assert best_response_value(fx.u_p1_knows(), fx.g_basic(), fixed) == F(1, 5)
    tau = BehaviorStrategy(2, {0: {0: F(1)}, 1: {1: F(1)}})
    assert best_response_value(fx.u_partial(), fx.g_reveal(), tau) == 0


def test_identity_strategy_sandwich():
    # payoff at (sigma, Id) bounds the value from above, (Id, tau) from below
    ident = Garbling.identity()
    rng = random.Random(3)
    for _ in range(15):
        u = rand_info(rng)
        g = rand_payoff(rng, 2)
        value, sigma, tau = bayesian_value(u, g)
        assert strategy_payoff(u, g, ident, tau.as_garbling()) <= value
        assert value <= strategy_payoff(u, g, sigma.as_garbling(), ident)


@given(info_structures(), info_structures(), payoff_structures())
@settings(max_examples=25, deadline=None)
def test_value_is_lipschitz_in_the_structure(u, v, g):
    gap = bayesian_value(u, g)[0] - bayesian_value(v, g)[0]
    assert abs(gap) <= l1_distance(u, v)


@given(info_structures(), garblings(), payoff_structures())
@settings(max_examples=25, deadline=None)
def test_garbling_monotonicity(u, q, g):
    middle = bayesian_value(u, g)[0]
    assert bayesian_value(garble_p1(q, u), g)[0] <= middle
    assert middle <= bayesian_value(garble_p2(u, q), g)[0]


def test_full_normal_form_oracle():
    rng = random.Random(17)
    for _ in range(50):
        u = rand_info(rng, max_sig1=2, max_sig2=2)
        g = rand_payoff(rng, 2)
        matrix, _, _ = normal_form_matrix(u, g)
        assert bayesian_value(u, g)[0] == matrix_game_value(matrix)[0]


def test_out_of_block_actions_never_change_the_value():
    # allow one extra action beyond the block: the expanded normal form with
    # the conceding convention has the same value
    rng = random.Random(23)
    for _ in range(20):
        u = rand_info(rng, max_sig1=2, max_sig2=2)
        g = rand_payoff(rng, 2)
        inside = bayesian_value(u, g)[0]
        acts = [0, 1, 2]
        matrix, _, _ = normal_form_matrix(u, g, actions1=acts, actions2=acts)
        assert matrix_game_value(matrix)[0] == inside


def test_state_mismatch_rejected():
    other = PayoffStructure(("a", "b"), 1, {})
    with pytest.raises(StructureError):
        bayesian_value(fx.u_trivial(), other)


def test_decision_value_cases():
    # one-signal structure: no information, pick the best action for the prior
    u0 = InfoStructure(TWO_STATES, {(0, 0, 0): F(1, 3), (1, 0, 0): F(2, 3)})
    g0 = PayoffStructure(TWO_STATES, 2, {(0, 0, 0): F(1), (1, 0, 0): F(-1),
                                         (0, 1, 0): F(-1), (1, 1, 0): F(1)})
    assert decision_value(u0, g0) == F(1, 3)
    with pytest.raises(StructureError):
        decision_value(fx.u_complete(), g0)   # player 2 signal not constant
