"""Information structures, payoff structures, and signal garblings.

An InfoStructure is a finitely supported common prior over
(state, player-1 signal, player-2 signal); a PayoffStructure is a family of
state-indexed matrix games with entries in [-1, 1] and an implied convention
outside its block (a player stepping outside the first `size` actions
concedes); a Garbling is a row-stochastic map on signals that both degrades
information and doubles as a behavior strategy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import StructureError
from .lp import ONE, ZERO, frac


@dataclass
class InfoStructure:
    """Finite-support probability over (state index, signal of 1, signal of 2)."""

    states: tuple[str, ...]
    entries: dict[tuple[int, int, int], Fraction]

    def __post_init__(self):
        self.states = tuple(self.states)
        if not self.states:
            raise StructureError("at least one state is required")
        clean = {}
        total = ZERO
        for key, p in self.entries.items():
            k, c, d = key
            p = frac(p)
            if not (0 <= k < len(self.states)):
                raise StructureError(f"state index {k} out of range")
            if c < 0 or d < 0:
                raise StructureError("signal ids must be nonnegative integers")
            if p < 0:
                raise StructureError(f"negative probability at {key}")
            total += p
            if p:
                clean[(k, c, d)] = clean.get((k, c, d), ZERO) + p
        if total != 1:
            raise StructureError(f"probabilities sum to {total}, expected 1")
        self.entries = clean

    @classmethod
    def from_entries(cls, states, entries) -> "InfoStructure":
        return cls(tuple(states), {tuple(k): frac(p) for k, p in dict(entries).items()})

    @classmethod
    def uniform(cls, states, support: Iterable[tuple[int, int, int]]) -> "InfoStructure":
        support = list(support)
        w = Fraction(1, len(support))
        acc: dict[tuple[int, int, int], Fraction] = {}
        for key in support:
            acc[key] = acc.get(key, ZERO) + w
        return cls(tuple(states), acc)

    def prob(self, k: int, c: int, d: int) -> Fraction:
        return self.entries.get((k, c, d), ZERO)

    def support1(self) -> list[int]:
        return sorted({c for (_, c, _) in self.entries})

    def support2(self) -> list[int]:
        return sorted({d for (_, _, d) in self.entries})

    def alphabet_size(self) -> int:
        """Smallest L with all signals of both players inside {0..L-1}."""
        top = -1
        for (_, c, d) in self.entries:
            if c > top:
                top = c
            if d > top:
                top = d
        return top + 1

    def marginal_states(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for (k, _, _), p in self.entries.items():
            out[k] = out.get(k, ZERO) + p
        return out

    def marginal1(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for (_, c, _), p in self.entries.items():
            out[c] = out.get(c, ZERO) + p
        return out

    def marginal2(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for (_, _, d), p in self.entries.items():
            out[d] = out.get(d, ZERO) + p
        return out

    def marginal_kc(self) -> dict[tuple[int, int], Fraction]:
        out: dict[tuple[int, int], Fraction] = {}
        for (k, c, _), p in self.entries.items():
            out[(k, c)] = out.get((k, c), ZERO) + p
        return out

    def marginal_kd(self) -> dict[tuple[int, int], Fraction]:
        out: dict[tuple[int, int], Fraction] = {}
        for (k, _, d), p in self.entries.items():
            out[(k, d)] = out.get((k, d), ZERO) + p
        return out

    def relabel(self, map1: Mapping[int, int], map2: Mapping[int, int]) -> "InfoStructure":
        ent = {(k, map1.get(c, c), map2.get(d, d)): p for (k, c, d), p in self.entries.items()}
        return InfoStructure(self.states, ent)


def _check_same_states(u: InfoStructure, v: InfoStructure):
    if u.states != v.states:
        raise StructureError(f"state sets differ: {u.states} vs {v.states}")


@dataclass
class PayoffStructure:
    """State-indexed payoff block of a given size plus the out-of-block convention.

    Stored entries all lie in [-1, 1]; unstored in-block entries are 0.  For
    (i, j) outside the block, value() materializes -1 when the row player is
    out of range and the column player is not, +1 in the mirrored case, and 0
    when both are out of range.
    """

    states: tuple[str, ...]
    size: int
    block: dict[tuple[int, int, int], Fraction]

    def __post_init__(self):
        self.states = tuple(self.states)
        if not self.states:
            raise StructureError("at least one state is required")
        if self.size < 1:
            raise StructureError("payoff size must be >= 1")
        clean = {}
        for key, g in self.block.items():
            k, i, j = key
            g = frac(g)
            if not (0 <= k < len(self.states)):
                raise StructureError(f"state index {k} out of range")
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise StructureError(f"block entry {key} outside size {self.size}")
            if not (-1 <= g <= 1):
                raise StructureError(f"payoff {g} at {key} outside [-1, 1]")
            if g:
                clean[(k, i, j)] = g
        self.block = clean

    @classmethod
    def from_matrices(cls, states, matrices) -> "PayoffStructure":
        """matrices[k][i][j] per state; all rows of equal length define the size."""
        mats = [[[frac(v) for v in row] for row in m] for m in matrices]
        size = max(max(len(m) for m in mats), max(len(r) for m in mats for r in m))
        block = {}
        for k, m in enumerate(mats):
            for i, row in enumerate(m):
                for j, v in enumerate(row):
                    block[(k, i, j)] = v
        return cls(tuple(states), size, block)

    def value(self, k: int, i: int, j: int) -> Fraction:
        L = self.size
        if i < L and j < L:
            return self.block.get((k, i, j), ZERO)
        if i >= L and j < L:
            return -ONE
        if j >= L and i < L:
            return ONE
        return ZERO

    def matrices(self) -> list[list[list[Fraction]]]:
        L = self.size
        return [[[self.value(k, i, j) for j in range(L)] for i in range(L)]
                for k in range(len(self.states))]


def sup_distance(g1: PayoffStructure, g2: PayoffStructure) -> Fraction:
    """Sup-norm distance between the full maps (block and implied extension)."""
    if g1.states != g2.states:
        raise StructureError("state sets differ")
    span = max(g1.size, g2.size)
    best = ZERO
    for k in range(len(g1.states)):
        for i in range(span + 1):
            for j in range(span + 1):
                gap = abs(g1.value(k, i, j) - g2.value(k, i, j))
                if gap > best:
                    best = gap
    return best


@dataclass
class Garbling:
    """Row-stochastic map on signals; signals without a row map to themselves."""

    rows: dict[int, dict[int, Fraction]]

    def __post_init__(self):
        clean = {}
        for sig, row in self.rows.items():
            if sig < 0:
                raise StructureError("signal ids must be nonnegative")
            dist = {}
            total = ZERO
            for target, p in row.items():
                p = frac(p)
                if target < 0:
                    raise StructureError("target signal ids must be nonnegative")
                if p < 0:
                    raise StructureError(f"negative weight in row {sig}")
                total += p
                if p:
                    dist[target] = dist.get(target, ZERO) + p
            if total != 1:
                raise StructureError(f"row {sig} sums to {total}, expected 1")
            clean[sig] = dist
        self.rows = clean

    @classmethod
    def identity(cls) -> "Garbling":
        return cls({})

    @classmethod
    def deterministic(cls, mapping: Mapping[int, int]) -> "Garbling":
        return cls({s: {t: ONE} for s, t in mapping.items()})

    @classmethod
    def constant(cls, signals: Iterable[int], target: int) -> "Garbling":
        return cls({s: {target: ONE} for s in signals})

    def row(self, signal: int) -> dict[int, Fraction]:
        return self.rows.get(signal, {signal: ONE})


def garble_p1(q: Garbling, u: InfoStructure) -> InfoStructure:
    """Pass player 1's signal through q; player 2's side is untouched."""
    ent: dict[tuple[int, int, int], Fraction] = {}
    for (k, c, d), p in u.entries.items():
        for c2, w in q.row(c).items():
            key = (k, c2, d)
            ent[key] = ent.get(key, ZERO) + p * w
    return InfoStructure(u.states, ent)


def garble_p2(u: InfoStructure, q: Garbling) -> InfoStructure:
    """Pass player 2's signal through q; player 1's side is untouched."""
    ent: dict[tuple[int, int, int], Fraction] = {}
    for (k, c, d), p in u.entries.items():
        for d2, w in q.row(d).items():
            key = (k, c, d2)
            ent[key] = ent.get(key, ZERO) + p * w
    return InfoStructure(u.states, ent)


def l1_distance(u: InfoStructure, v: InfoStructure) -> Fraction:
    """Sum of absolute entry differences over the union of supports."""
    _check_same_states(u, v)
    total = ZERO
    for key in u.entries.keys() | v.entries.keys():
        total += abs(u.entries.get(key, ZERO) - v.entries.get(key, ZERO))
    return total


def scalar_product(g: PayoffStructure, u: InfoStructure) -> Fraction:
    """Expectation of g under u, reading signals as actions."""
    if g.states != u.states:
        raise StructureError("state sets differ")
    return sum((p * g.value(k, c, d) for (k, c, d), p in u.entries.items()), ZERO)


def strategy_payoff(u: InfoStructure, g: PayoffStructure,
                    q1: Garbling, q2: Garbling) -> Fraction:
    """Expected payoff when both players play garblings as behavior strategies."""
    if g.states != u.states:
        raise StructureError("state sets differ")
    total = ZERO
    for (k, c, d), p in u.entries.items():
        for i, w1 in q1.row(c).items():
            for j, w2 in q2.row(d).items():
                total += p * w1 * w2 * g.value(k, i, j)
    return total


# --- canonical form ---------------------------------------------------------
#
# Signals are renumbered 0..n-1 per player so that any relabeling of the same
# structure produces the identical object.  Colors are refined by conditional
# distributions; residual symmetric classes are broken by trying each
# individualization and keeping the lexicographically smallest entry table.


def _refine_colors(u: InfoStructure, col1, col2):
    p1 = u.marginal1()
    p2 = u.marginal2()
    while True:
        fp1 = {}
        for c in col1:
            cond = sorted((k, col2[d], u.entries[(k, cc, d)] / p1[c])
                          for (k, cc, d) in u.entries if cc == c)
            fp1[c] = (col1[c], p1[c], tuple(cond))
        fp2 = {}
        for d in col2:
            cond = sorted((k, col1[c], u.entries[(k, c, dd)] / p2[d])
                          for (k, c, dd) in u.entries if dd == d)
            fp2[d] = (col2[d], p2[d], tuple(cond))
        new1 = {c: rank for rank, key in enumerate(sorted(set(fp1.values())))
                for c in col1 if fp1[c] == key}
        new2 = {d: rank for rank, key in enumerate(sorted(set(fp2.values())))
                for d in col2 if fp2[d] == key}
        if new1 == col1 and new2 == col2:
            return col1, col2
        col1, col2 = new1, new2


def _color_classes(colors):
    classes: dict[int, list] = {}
    for s, col in colors.items():
        classes.setdefault(col, []).append(s)
    return [sorted(classes[c]) for c in sorted(classes)]


def _canonical_entries(u: InfoStructure, col1, col2):
    col1, col2 = _refine_colors(u, col1, col2)
    for player, colors in ((1, col1), (2, col2)):
        for cls in _color_classes(colors):
            if len(cls) > 1:
                best = None
                for chosen in cls:
                    trial = dict(colors)
                    trial[chosen] = max(colors.values()) + 1
                    if player == 1:
                        cand = _canonical_entries(u, trial, dict(col2))
                    else:
                        cand = _canonical_entries(u, dict(col1), trial)
                    if best is None or cand < best:
                        best = cand
                return best
    ord1 = {c: rank for rank, (_, c) in enumerate(sorted((col1[c], c) for c in col1))}
    ord2 = {d: rank for rank, (_, d) in enumerate(sorted((col2[d], d) for d in col2))}
    return tuple(sorted(((k, ord1[c], ord2[d]), p) for (k, c, d), p in u.entries.items()))


def canonicalize(u: InfoStructure) -> InfoStructure:
    """Deterministic normal form: equal up to relabeling implies equal objects."""
    col1 = {c: 0 for c in u.support1()}
    col2 = {d: 0 for d in u.support2()}
    entries = dict(_canonical_entries(u, col1, col2))
    return InfoStructure(u.states, entries)
