"""Shared random-instance generators and hypothesis strategies."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from infodist import Garbling, InfoStructure, PayoffStructure

TWO_STATES = ("blue", "red")


def rand_info(rng: random.Random, n_states: int = 2, max_sig1: int = 2,
              max_sig2: int = 2, weight_cap: int = 4) -> InfoStructure:
    """Random structure with small integer weights; support never empty."""
    states = TWO_STATES if n_states == 2 else tuple(f"s{k}" for k in range(n_states))
    keys = [(k, c, d) for k in range(n_states)
            for c in range(max_sig1) for d in range(max_sig2)]
    while True:
        weights = [rng.randint(0, weight_cap) for _ in keys]
        total = sum(weights)
        if total:
            break
    entries = {key: Fraction(w, total) for key, w in zip(keys, weights) if w}
    return InfoStructure(states, entries)


def rand_payoff(rng: random.Random, size: int, n_states: int = 2,
                denom: int = 4) -> PayoffStructure:
    states = TWO_STATES if n_states == 2 else tuple(f"s{k}" for k in range(n_states))
    block = {(k, i, j): Fraction(rng.randint(-denom, denom), denom)
             for k in range(n_states) for i in range(size) for j in range(size)}
    return PayoffStructure(states, size, block)


def rand_garbling(rng: random.Random, signals, n_targets: int) -> Garbling:
    rows = {}
    for s in signals:
        weights = [rng.randint(0, 3) for _ in range(n_targets)]
        if not sum(weights):
            weights[rng.randrange(n_targets)] = 1
        total = sum(weights)
        rows[s] = {t: Fraction(w, total) for t, w in enumerate(weights) if w}
    return Garbling(rows)


# hypothesis strategies

small_fracs = st.fractions(min_value=-1, max_value=1, max_denominator=6)
prob_fracs = st.fractions(min_value=0, max_value=1, max_denominator=6)


@st.composite
def info_structures(draw, max_sig: int = 2):
    n_cells = 2 * max_sig * max_sig
    weights = draw(st.lists(st.integers(min_value=0, max_value=4),
                            min_size=n_cells, max_size=n_cells)
                   .filter(lambda w: sum(w) > 0))
    total = sum(weights)
    keys = [(k, c, d) for k in range(2) for c in range(max_sig) for d in range(max_sig)]
    entries = {key: Fraction(w, total) for key, w in zip(keys, weights) if w}
    return InfoStructure(TWO_STATES, entries)


@st.composite
def payoff_structures(draw, size: int = 2):
    n_cells = 2 * size * size
    nums = draw(st.lists(st.integers(min_value=-4, max_value=4),
                         min_size=n_cells, max_size=n_cells))
    keys = [(k, i, j) for k in range(2) for i in range(size) for j in range(size)]
    return PayoffStructure(TWO_STATES, size,
                           {key: Fraction(n, 4) for key, n in zip(keys, nums) if n})


@st.composite
def garblings(draw, n_signals: int = 2, n_targets: int = 2):
    rows = {}
    for s in range(n_signals):
        weights = draw(st.lists(st.integers(min_value=0, max_value=3),
                                min_size=n_targets, max_size=n_targets)
                       .filter(lambda w: sum(w) > 0))
        total = sum(weights)
        rows[s] = {t: Fraction(w, total) for t, w in enumerate(weights) if w}
    return Garbling(rows)
