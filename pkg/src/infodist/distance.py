"""Value-based comparison of information structures.

The largest value advantage one structure can ever have over another equals
the minimal L1 distance between their garbled images, which is a single LP
over pairs of garblings.  Everything else here builds on that LP: the
two-sided distance, order and equivalence certificates, witness payoff
blocks extracted from the dual, and strategy transfer between nearby
structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConsistencyError, StructureError
from .game import BehaviorStrategy, bayesian_value, best_response_value
from .lp import EQ, MIN, ONE, ZERO, LinearProgram, Optimal, lp_solve
from .structures import (Garbling, InfoStructure, PayoffStructure,
                         garble_p1, garble_p2, l1_distance)

FIRST_DOMINATES = "first-dominates"
SECOND_DOMINATES = "second-dominates"
EQUIVALENT = "equivalent"
INCOMPARABLE = "incomparable"


@dataclass
class OrderCertificate:
    """Outcome of comparing two structures, with checkable witnesses.

    deviation_uv bounds how much better v can be than u across all payoff
    blocks, and deviation_vu the reverse.  When a zero deviation certifies
    dominance, the corresponding garbling pair is included: q1.u == v.q2
    certifies u above v, u.q3 == q4.v certifies the other side.
    """

    direction: str
    deviation_uv: Fraction
    deviation_vu: Fraction
    q1: Optional[Garbling] = None
    q2: Optional[Garbling] = None
    q3: Optional[Garbling] = None
    q4: Optional[Garbling] = None


def _common_size(u: InfoStructure, v: InfoStructure) -> int:
    if u.states != v.states:
        raise StructureError(f"state sets differ: {u.states} vs {v.states}")
    return max(u.alphabet_size(), v.alphabet_size())


def _deviation_lp(u: InfoStructure, v: InfoStructure, restrict: bool):
    """LP whose optimum is min over garbling pairs of ||q1.u - v.q2||.

    Garbling q1 reroutes u's player-1 signals, q2 reroutes v's player-2
    signals, both into {0..L-1}.  With restrict=True, targets are limited to
    the signals the other side can actually occupy plus one spare: rerouted
    mass landing on any unmatched target costs exactly its weight, so a
    single spare target is as good as all of them and the optimum is
    unchanged.
    """
    L = _common_size(u, v)
    sigs_u1 = u.support1()
    sigs_v2 = v.support2()
    sup_v1 = set(v.support1())
    sup_u2 = set(u.support2())

    if restrict:
        targets1 = sorted(sup_v1)
        spare = next((x for x in range(L) if x not in sup_v1), None)
        if spare is not None:
            targets1.append(spare)
        targets2 = sorted(sup_u2)
        spare = next((y for y in range(L) if y not in sup_u2), None)
        if spare is not None:
            targets2.append(spare)
    else:
        targets1 = list(range(L))
        targets2 = list(range(L))

    u_kyc: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (k, c, d), p in u.entries.items():
        u_kyc.setdefault((k, d), []).append((c, p))
    v_kxd: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (k, c, d), p in v.entries.items():
        v_kxd.setdefault((k, c), []).append((d, p))

    nK = len(u.states)
    q1v = {(c, x): n for n, (c, x) in enumerate(
        (c, x) for c in sigs_u1 for x in targets1)}
    q2v = {(d, y): len(q1v) + n for n, (d, y) in enumerate(
        (d, y) for d in sigs_v2 for y in targets2)}
    nq = len(q1v) + len(q2v)

    objective = [ZERO] * nq
    cons = []
    cells = []
    for k in range(nK):
        for x in targets1:
            for y in targets2:
                a_terms = u_kyc.get((k, y))       # q1.u mass reaching (k,x,y)
                b_terms = v_kxd.get((k, x))       # v.q2 mass reaching (k,x,y)
                if a_terms and b_terms:
                    cells.append((k, x, y, a_terms, b_terms))
                elif a_terms:
                    for c, p in a_terms:
                        objective[q1v[(c, x)]] += p
                elif b_terms:
                    for d, p in b_terms:
                        objective[q2v[(d, y)]] += p

    nvars = nq + 2 * len(cells)
    objective = objective + [ONE] * (2 * len(cells))
    for n, (k, x, y, a_terms, b_terms) in enumerate(cells):
        coeffs = [ZERO] * nvars
        for c, p in a_terms:
            coeffs[q1v[(c, x)]] += p
        for d, p in b_terms:
            coeffs[q2v[(d, y)]] -= p
        coeffs[nq + 2 * n] = -ONE       # positive part of the difference
        coeffs[nq + 2 * n + 1] = ONE    # negative part
        cons.append((coeffs, EQ, ZERO))
    for c in sigs_u1:
        coeffs = [ZERO] * nvars
        for x in targets1:
            coeffs[q1v[(c, x)]] = ONE
        cons.append((coeffs, EQ, ONE))
    for d in sigs_v2:
        coeffs = [ZERO] * nvars
        for y in targets2:
            coeffs[q2v[(d, y)]] = ONE
        cons.append((coeffs, EQ, ONE))

    lp = LinearProgram.build(MIN, objective, cons)
    return lp, q1v, q2v, cells, L


def _extract_garblings(out, q1v, q2v):
    rows1: dict[int, dict[int, Fraction]] = {}
    for (c, x), idx in q1v.items():
        if out.x[idx]:
            rows1.setdefault(c, {})[x] = out.x[idx]
    rows2: dict[int, dict[int, Fraction]] = {}
    for (d, y), idx in q2v.items():
        if out.x[idx]:
            rows2.setdefault(d, {})[y] = out.x[idx]
    return Garbling(rows1), Garbling(rows2)


def one_sided_deviation(u: InfoStructure, v: InfoStructure,
                        restrict: bool = True):
    """Largest achievable val(v, g) - val(u, g), with minimizing garblings.

    Returns (delta, q1, q2) with delta = ||q1.u - v.q2|| at the optimum; a
    zero delta certifies that u is at least as good as v for player 1 in
    every game.
    """
    lp, q1v, q2v, _, _ = _deviation_lp(u, v, restrict)
    out = lp_solve(lp)
    if not isinstance(out, Optimal):
        raise ConsistencyError("deviation LP must have an optimum")
    q1, q2 = _extract_garblings(out, q1v, q2v)
    if l1_distance(garble_p1(q1, u), garble_p2(v, q2)) != out.value:
        raise ConsistencyError("deviation witnesses do not reproduce the optimum")
    return out.value, q1, q2


@dataclass
class DistanceResult:
    distance: Fraction
    deviation_uv: Fraction       # sup of val(v,.) - val(u,.)
    deviation_vu: Fraction       # sup of val(u,.) - val(v,.)
    q1: Garbling                 # ||q1.u - v.q2|| = deviation_uv
    q2: Garbling
    q3: Garbling                 # ||q4.v - u.q3|| = deviation_vu
    q4: Garbling


def value_distance(u: InfoStructure, v: InfoStructure) -> DistanceResult:
    """Largest value gap over all payoff structures, with witnesses both ways."""
    duv, q1, q2 = one_sided_deviation(u, v)
    dvu, q4, q3 = one_sided_deviation(v, u)
    return DistanceResult(max(duv, dvu), duv, dvu, q1, q2, q3, q4)


def compare(u: InfoStructure, v: InfoStructure) -> OrderCertificate:
    """Order or equivalence decision backed by exact garbling witnesses."""
    res = value_distance(u, v)
    duv, dvu = res.deviation_uv, res.deviation_vu
    if duv == 0 and dvu == 0:
        return OrderCertificate(EQUIVALENT, duv, dvu,
                                q1=res.q1, q2=res.q2, q3=res.q3, q4=res.q4)
    if duv == 0:
        return OrderCertificate(FIRST_DOMINATES, duv, dvu, q1=res.q1, q2=res.q2)
    if dvu == 0:
        return OrderCertificate(SECOND_DOMINATES, duv, dvu, q3=res.q3, q4=res.q4)
    return OrderCertificate(INCOMPARABLE, duv, dvu)


def witness_payoff(u: InfoStructure, v: InfoStructure) -> PayoffStructure:
    """A payoff block on which v beats u by exactly the one-sided deviation.

    On cells both garbled images can reach, the entry is the dual multiplier
    of the cell row (in [-1, 1] by dual feasibility); cells only the u-side
    can reach pay -1 and cells only the v-side can reach pay +1, matching
    the eliminated rows' multipliers at their bounds.  The block is then
    certified by two value computations; certification failure aborts.
    """
    lp, q1v, q2v, cells, L = _deviation_lp(u, v, restrict=False)
    out = lp_solve(lp)
    if not isinstance(out, Optimal):
        raise ConsistencyError("deviation LP must have an optimum")
    delta = out.value

    u_reach = {(k, d) for (k, _, d) in u.entries}   # (k, y) the u-side can hit
    v_reach = {(k, c) for (k, c, _) in v.entries}   # (k, x) the v-side can hit
    block = {}
    for k in range(len(u.states)):
        for x in range(L):
            for y in range(L):
                a = (k, y) in u_reach
                b = (k, x) in v_reach
                if a and not b:
                    block[(k, x, y)] = -ONE
                elif b and not a:
                    block[(k, x, y)] = ONE
    for n, (k, x, y, _, _) in enumerate(cells):
        w = out.row_duals[n]
        if w < -1 or w > 1:
            raise ConsistencyError("dual multiplier escaped [-1, 1]")
        if w:
            block[(k, x, y)] = w
    g = PayoffStructure(u.states, L, block)
    gap = bayesian_value(v, g)[0] - bayesian_value(u, g)[0]
    if gap != delta:
        raise ConsistencyError("witness payoff failed certification")
    return g


def transfer_strategy(sigma: BehaviorStrategy, q1: Garbling,
                      signals) -> BehaviorStrategy:
    """Compose a player-1 strategy with a garbling: garble, then play sigma.

    signals are the receiving structure's support signals; targets without a
    sigma row fall back to playing the target id as an action.
    """
    if sigma.player != 1:
        raise StructureError("transfer is defined for player-1 strategies")
    rows = {}
    for c in signals:
        mix: dict[int, Fraction] = {}
        for c2, w in q1.row(c).items():
            inner = sigma.rows.get(c2, {c2: ONE})
            for i, wi in inner.items():
                mix[i] = mix.get(i, ZERO) + w * wi
        rows[c] = mix
    return BehaviorStrategy(1, rows)


def transfer_guarantee(u: InfoStructure, v: InfoStructure,
                       g: PayoffStructure):
    """Transfer an optimal strategy of the game on v into the game on u.

    Returns (strategy, guarantee, bound) with guarantee >= val(u, g) - 2 d(u, v)
    always; the exact guarantee is certified by a best-reply computation.
    """
    _, sigma, _ = bayesian_value(v, g)
    res = value_distance(u, v)
    moved = transfer_strategy(sigma, res.q1, u.support1())
    guarantee = best_response_value(u, g, moved)
    bound = bayesian_value(u, g)[0] - 2 * res.distance
    if guarantee < bound:
        raise ConsistencyError("transferred strategy violates its guarantee")
    return moved, guarantee, bound


# --- one-player specialization ----------------------------------------------


def _one_player(u0: InfoStructure):
    if u0.support2() != [0]:
        raise StructureError("one-player structures carry a constant signal 0 for player 2")


def _single_garbling_lp(u0: InfoStructure, v0: InfoStructure):
    """min over q of ||q.u0 - v0|| for one-player structures."""
    if u0.states != v0.states:
        raise StructureError("state sets differ")
    L = max(u0.alphabet_size(), v0.alphabet_size())
    sigs = u0.support1()
    sup_v = set(v0.support1())
    targets = sorted(sup_v)
    spare = next((x for x in range(L) if x not in sup_v), None)
    if spare is not None:
        targets.append(spare)

    u_k: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, c, _), p in u0.entries.items():
        u_k.setdefault(k, []).append((c, p))

    qv = {(c, x): n for n, (c, x) in enumerate((c, x) for c in sigs for x in targets)}
    cells = []
    objective = [ZERO] * len(qv)
    consts = ZERO
    for k in range(len(u0.states)):
        for x in targets:
            vp = v0.prob(k, x, 0)
            a_terms = u_k.get(k)
            if vp or a_terms:
                cells.append((k, x, a_terms or [], vp))
    nvars = len(qv) + 2 * len(cells)
    objective = objective + [ONE] * (2 * len(cells))
    cons = []
    for n, (k, x, a_terms, vp) in enumerate(cells):
        coeffs = [ZERO] * nvars
        for c, p in a_terms:
            coeffs[qv[(c, x)]] += p
        coeffs[len(qv) + 2 * n] = -ONE
        coeffs[len(qv) + 2 * n + 1] = ONE
        cons.append((coeffs, EQ, vp))
    for c in sigs:
        coeffs = [ZERO] * nvars
        for x in targets:
            coeffs[qv[(c, x)]] = ONE
        cons.append((coeffs, EQ, ONE))
    lp = LinearProgram.build(MIN, objective, cons)
    out = lp_solve(lp)
    if not isinstance(out, Optimal):
        raise ConsistencyError("one-player deviation LP must have an optimum")
    rows: dict[int, dict[int, Fraction]] = {}
    for (c, x), idx in qv.items():
        if out.x[idx]:
            rows.setdefault(c, {})[x] = out.x[idx]
    q = Garbling(rows)
    if l1_distance(garble_p1(q, u0), v0) != out.value:
        raise ConsistencyError("one-player witness does not reproduce the optimum")
    return out.value, q


def blackwell_compare_1p(u0: InfoStructure, v0: InfoStructure):
    """One-player informativeness order and distance.

    Returns (d0, direction, witness): d0 is the two-sided minimum-garbling
    distance, direction follows the same vocabulary as compare(), and the
    witness garbling maps the dominating structure onto the other (None when
    incomparable).
    """
    _one_player(u0)
    _one_player(v0)
    fwd, q_fwd = _single_garbling_lp(u0, v0)
    back, q_back = _single_garbling_lp(v0, u0)
    d0 = max(fwd, back)
    if fwd == 0 and back == 0:
        return d0, EQUIVALENT, q_fwd
    if fwd == 0:
        return d0, FIRST_DOMINATES, q_fwd
    if back == 0:
        return d0, SECOND_DOMINATES, q_back
    return d0, INCOMPARABLE, None
