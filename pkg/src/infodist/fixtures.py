"""Small two-state structures and payoff blocks reused across tests and docs."""

from __future__ import annotations

from fractions import Fraction

from .lp import ONE, ZERO, frac
from .structures import Garbling, InfoStructure, PayoffStructure

BLUE_RED = ("blue", "red")
H = Fraction(1, 2)
Q = Fraction(1, 4)


def u_complete() -> InfoStructure:
    """Both players observe the state."""
    return InfoStructure(BLUE_RED, {(0, 0, 0): H, (1, 1, 1): H})


def u_p1_knows() -> InfoStructure:
    """Player 1 observes the state; player 2 sees a constant signal."""
    return InfoStructure(BLUE_RED, {(0, 0, 0): H, (1, 1, 0): H})


def u_p2_knows() -> InfoStructure:
    """Player 2 observes the state; player 1 sees a constant signal."""
    return InfoStructure(BLUE_RED, {(0, 0, 0): H, (1, 0, 1): H})


def u_p2_knows_swapped() -> InfoStructure:
    """u_p2_knows with both players' signals 0 and 1 exchanged."""
    return InfoStructure(BLUE_RED, {(0, 1, 1): H, (1, 1, 0): H})


def u_partial() -> InfoStructure:
    """Three signals for player 1, two for player 2, partially revealing."""
    return InfoStructure(BLUE_RED, {
        (0, 0, 0): Q, (0, 1, 1): Q, (1, 1, 0): Q, (1, 2, 1): Q})


def u_trivial() -> InfoStructure:
    """Uniform prior, no information for anyone."""
    return InfoStructure(BLUE_RED, {(0, 0, 0): H, (1, 0, 0): H})


def u_ladder(n: int) -> InfoStructure:
    """Chain of overlapping signals: player 1 sees 0..n, player 2 sees 0..n+1.

    State blue joins equal signals (i, i); state red joins (i, i+1).  All
    2(n+1) combinations are equally likely.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    w = Fraction(1, 2 * (n + 1))
    entries = {}
    for i in range(n + 1):
        entries[(0, i, i)] = w
        entries[(1, i, i + 1)] = w
    return InfoStructure(BLUE_RED, entries)


def u_full_info_p1(p) -> InfoStructure:
    """Player 1 learns the state drawn from p; player 2 learns nothing."""
    p = [frac(x) for x in p]
    states = tuple(f"s{k}" for k in range(len(p)))
    return InfoStructure(states, {(k, k, 0): pk for k, pk in enumerate(p) if pk})


def u_full_info_p2(p) -> InfoStructure:
    """Player 2 learns the state drawn from p; player 1 learns nothing."""
    p = [frac(x) for x in p]
    states = tuple(f"s{k}" for k in range(len(p)))
    return InfoStructure(states, {(k, 0, k): pk for k, pk in enumerate(p) if pk})


def g_basic() -> PayoffStructure:
    """Two-action block where informed play is worth 1/5 against an ignorant foe."""
    return PayoffStructure.from_matrices(BLUE_RED, [
        [[0, 0], [Fraction(-3, 5), 1]],
        [[1, Fraction(-3, 5)], [0, 0]],
    ])


def g_reveal() -> PayoffStructure:
    """Rewards player 1 for matching actions to states when player 2 cannot."""
    return PayoffStructure.from_matrices(BLUE_RED, [
        [[0, 1], [0, -1]],
        [[-1, 0], [1, 0]],
    ])


def g_guess() -> PayoffStructure:
    """Player 2 wins by guessing the state, whatever player 1 does."""
    return PayoffStructure.from_matrices(BLUE_RED, [
        [[-1, 1], [-1, 1]],
        [[1, -1], [1, -1]],
    ])


def g_state_match(n_states: int) -> PayoffStructure:
    """Player 1 earns +1 for naming the state and -1 otherwise."""
    states = tuple(f"s{k}" for k in range(n_states))
    block = {}
    for k in range(n_states):
        for i in range(n_states):
            for j in range(n_states):
                block[(k, i, j)] = ONE if i == k else -ONE
    return PayoffStructure(states, n_states, block)


def q_collapse_example() -> Garbling:
    """Merges player 1's signals 1 and 2 of u_partial into a single signal."""
    return Garbling.deterministic({0: 0, 1: 1, 2: 1})


def q_split_example() -> Garbling:
    """Splits a constant signal 0 uniformly over {0, 1}."""
    return Garbling({0: {0: H, 1: H}})
