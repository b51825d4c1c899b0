"""Exact values of zero-sum games with privately informed players.

The two-player value is computed from a polynomial-size LP over behavior
strategies: player 1 maximizes, a free variable per player-2 signal carries
the inner minimum, and player 2's optimal strategy is read off the dual.
Actions live in {0..size-1}: stepping outside the block is never profitable
under the payoff-structure convention (concede / collect 1), so restricting
to the block preserves the value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructureError
from .lp import EQ, LE, MAX, ONE, ZERO, LinearProgram, Optimal, lp_solve
from .lp import matrix_game_value  # re-exported for normal-form oracles
from .structures import Garbling, InfoStructure, PayoffStructure


@dataclass
class BehaviorStrategy:
    """Per-signal mixed action for one player, defined on the support signals."""

    player: int
    rows: dict[int, dict[int, Fraction]]

    def __post_init__(self):
        if self.player not in (1, 2):
            raise StructureError("player must be 1 or 2")
        for sig, row in self.rows.items():
            total = sum(row.values(), ZERO)
            if total != 1 or any(p < 0 for p in row.values()):
                raise StructureError(f"row {sig} is not a probability distribution")

    def row(self, signal: int) -> dict[int, Fraction]:
        try:
            return self.rows[signal]
        except KeyError:
            raise StructureError(f"strategy has no row for signal {signal}")

    def as_garbling(self) -> Garbling:
        return Garbling({s: dict(r) for s, r in self.rows.items()})


def _check_states(u: InfoStructure, g: PayoffStructure):
    if u.states != g.states:
        raise StructureError("information and payoff structures disagree on states")


def _useful_actions(g: PayoffStructure, player: int) -> list[int]:
    """Drop actions that are worst-possible across the whole block.

    A row of -1s can never help the maximizer and a column of +1s can never
    help the minimizer, so removing them (keeping at least one action)
    leaves the value unchanged.  Padded rectangular games shrink back to
    their true action sets here.
    """
    L = g.size
    K = range(len(g.states))
    kept = []
    for a in range(L):
        if player == 1:
            if any(g.value(k, a, j) != -1 for k in K for j in range(L)):
                kept.append(a)
        else:
            if any(g.value(k, i, a) != 1 for k in K for i in range(L)):
                kept.append(a)
    return kept or [0]


def bayesian_value(u: InfoStructure, g: PayoffStructure):
    """Exact value and optimal behavior strategies of the game on (u, g).

    Returns (value, sigma, tau) where sigma guarantees at least the value for
    player 1 against every reply and tau symmetrically for player 2.
    """
    _check_states(u, g)
    sigs1 = u.support1()
    sigs2 = u.support2()
    acts1 = _useful_actions(g, 1)
    acts2 = _useful_actions(g, 2)

    xs = {(c, i): n for n, (c, i) in enumerate(
        (c, i) for c in sigs1 for i in acts1)}
    ts = {d: len(xs) + n for n, d in enumerate(sigs2)}
    nvars = len(xs) + len(ts)

    # weight(c, d, i, j) = sum_k u(k,c,d) g(k,i,j), assembled sparsely
    by_cd: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (k, c, d), p in u.entries.items():
        by_cd.setdefault((c, d), []).append((k, p))

    cons = []
    for d in sigs2:
        for j in acts2:
            coeffs = [ZERO] * nvars
            coeffs[ts[d]] = ONE
            for c in sigs1:
                pairs = by_cd.get((c, d))
                if not pairs:
                    continue
                for i in acts1:
                    w = sum((p * g.value(k, i, j) for k, p in pairs), ZERO)
                    if w:
                        coeffs[xs[(c, i)]] -= w
            cons.append((coeffs, LE, ZERO))
    for c in sigs1:
        coeffs = [ZERO] * nvars
        for i in acts1:
            coeffs[xs[(c, i)]] = ONE
        cons.append((coeffs, EQ, ONE))

    objective = [ZERO] * nvars
    for d in sigs2:
        objective[ts[d]] = ONE
    lower = [ZERO] * len(xs) + [None] * len(ts)
    upper = [None] * nvars
    lp = LinearProgram.build(MAX, objective, cons, lower=lower, upper=upper)
    out = lp_solve(lp)
    if not isinstance(out, Optimal):
        raise StructureError("value LP did not solve to optimality")

    sigma = BehaviorStrategy(1, {
        c: {i: out.x[xs[(c, i)]] for i in acts1 if out.x[xs[(c, i)]]}
        for c in sigs1})
    tau_rows = {}
    row_idx = 0
    for d in sigs2:
        dist = {}
        for j in acts2:
            y = out.row_duals[row_idx]
            row_idx += 1
            if y:
                dist[j] = y
        tau_rows[d] = dist
    tau = BehaviorStrategy(2, tau_rows)
    return out.value, sigma, tau


def best_response_value(u: InfoStructure, g: PayoffStructure,
                        fixed: BehaviorStrategy) -> Fraction:
    """Value of the opponent's best reply to a fixed strategy.

    The reply decomposes signal by signal, so this is a direct summation and
    serves as an independent certificate for LP-produced strategies.
    """
    _check_states(u, g)
    L = g.size
    if fixed.player == 1:
        by_d: dict[int, dict[tuple[int, int], Fraction]] = {}
        for (k, c, d), p in u.entries.items():
            by_d.setdefault(d, {})[(k, c)] = p
        total = ZERO
        for d, cell in by_d.items():
            best = None
            for j in range(L):
                pay = ZERO
                for (k, c), p in cell.items():
                    for i, w in fixed.row(c).items():
                        pay += p * w * g.value(k, i, j)
                if best is None or pay < best:
                    best = pay
            total += best
        return total
    by_c: dict[int, dict[tuple[int, int], Fraction]] = {}
    for (k, c, d), p in u.entries.items():
        by_c.setdefault(c, {})[(k, d)] = p
    total = ZERO
    for c, cell in by_c.items():
        best = None
        for i in range(L):
            pay = ZERO
            for (k, d), p in cell.items():
                for j, w in fixed.row(d).items():
                    pay += p * w * g.value(k, i, j)
            if best is None or pay > best:
                best = pay
        total += best
    return total


def decision_value(u0: InfoStructure, g0: PayoffStructure) -> Fraction:
    """Value of the one-player problem: the decision maker sees player 1's signal.

    u0 must give player 2 a constant signal 0; g0 is read through its first
    column (the opponent is a dummy with the single action 0).
    """
    _check_states(u0, g0)
    if u0.support2() != [0]:
        raise StructureError("one-player structures carry a constant signal 0 for player 2")
    by_c: dict[int, dict[int, Fraction]] = {}
    for (k, c, _), p in u0.entries.items():
        by_c.setdefault(c, {})[k] = by_c.get(c, {}).get(k, ZERO) + p
    total = ZERO
    for c, cell in by_c.items():
        total += max(sum((p * g0.value(k, i, 0) for k, p in cell.items()), ZERO)
                     for i in range(g0.size))
    return total


def normal_form_matrix(u: InfoStructure, g: PayoffStructure,
                       actions1=None, actions2=None):
    """Expand the game into pure strategy maps (signal -> action) for oracles."""
    _check_states(u, g)
    sigs1, sigs2 = u.support1(), u.support2()
    acts1 = list(range(g.size)) if actions1 is None else list(actions1)
    acts2 = list(range(g.size)) if actions2 is None else list(actions2)
    import itertools
    maps1 = [dict(zip(sigs1, combo)) for combo in itertools.product(acts1, repeat=len(sigs1))]
    maps2 = [dict(zip(sigs2, combo)) for combo in itertools.product(acts2, repeat=len(sigs2))]
    matrix = []
    for m1 in maps1:
        row = []
        for m2 in maps2:
            row.append(sum((p * g.value(k, m1[c], m2[d])
                            for (k, c, d), p in u.entries.items()), ZERO))
        matrix.append(row)
    return matrix, maps1, maps2
