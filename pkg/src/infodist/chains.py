"""Markov chains over {1..N}, the derived game structures, and their checks.

A chain draws its first state uniformly and then moves uniformly over a
successor set of size N/2 per state.  Interleaved chain runs of length 2l
become information structures (odd positions to player 1, even to player 2);
reporting games reward reports that stay inside the chain's support.  The
module also houses the conditional-probability conditions on near-uniform
continuation odds, the subset-overlap statistics that imply them, and the
Monte Carlo experiments around both.

Signal and action encoding: a tuple (a_1..a_t) over {1..N} maps to the id
sum_t (a_t - 1) * N^(len - t), i.e. big-endian base-N digits; decode_tuple
inverts this for display.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .errors import BudgetError, StructureError
from .game import bayesian_value
from .lp import ONE, ZERO, frac
from .structures import InfoStructure, PayoffStructure

ALPHA = Fraction(1, 25)

NICE = "nice"
NOT_NICE_P1 = "not-nice-player-1"
NOT_NICE_P2 = "not-nice-player-2"


@dataclass
class ChainSpec:
    """Transition support of a chain on {1..N}: successors[a-1] lists S_a."""

    size: int
    successors: tuple[tuple[int, ...], ...]
    seed: Optional[int] = None

    def __post_init__(self):
        n = self.size
        if n < 2 or n % 2:
            raise StructureError("chain size must be an even integer >= 2")
        if len(self.successors) != n:
            raise StructureError("one successor set per state is required")
        cleaned = []
        for a, succ in enumerate(self.successors, start=1):
            s = tuple(sorted(set(succ)))
            if len(s) != n // 2:
                raise StructureError(f"state {a} needs exactly {n // 2} successors")
            if s[0] < 1 or s[-1] > n:
                raise StructureError(f"state {a} has successors outside 1..{n}")
            cleaned.append(s)
        self.successors = tuple(cleaned)
        self._sets = [frozenset(s) for s in self.successors]

    def follows(self, a: int, b: int) -> bool:
        """True when b is a possible next state after a."""
        return b in self._sets[a - 1]

    def succ(self, a: int) -> tuple[int, ...]:
        return self.successors[a - 1]


def sample_chain(size: int, seed: int) -> ChainSpec:
    """Draw each successor set independently and uniformly among N/2-subsets."""
    if size < 2 or size % 2:
        raise StructureError("chain size must be an even integer >= 2")
    rng = random.Random(seed)
    succ = tuple(tuple(sorted(rng.sample(range(1, size + 1), size // 2)))
                 for _ in range(size))
    return ChainSpec(size, succ, seed)


def doubly_uniform_chain(size: int) -> ChainSpec:
    """Deterministic chain whose two-step counts are all exactly N/4.

    Built from the two-bit shift graph on four states and doubled recursively,
    so |{d in S_a : b in S_d}| = N/4 for every pair (a, b).  Level-one
    continuation odds are then exactly one half everywhere.
    """
    if size < 4 or size & (size - 1):
        raise StructureError("doubly uniform chains exist here for sizes 4, 8, 16, ...")
    base = [(1, 2), (3, 4), (1, 2), (3, 4)]
    n = 4
    succ = base
    while n < size:
        succ = [tuple(s for x in row for s in (x, x + n)) for row in succ] * 2
        n *= 2
    return ChainSpec(size, tuple(tuple(sorted(r)) for r in succ))


@dataclass
class NicenessVerdict:
    status: str
    failing_index: Optional[int] = None


def niceness(chain: ChainSpec, seq) -> NicenessVerdict:
    """Support test with blame: the parity of the first failing index names the player."""
    seq = list(seq)
    if not seq:
        raise StructureError("sequence must be non-empty")
    for a in seq:
        if not (1 <= a <= chain.size):
            raise StructureError(f"state {a} outside 1..{chain.size}")
    for t in range(1, len(seq)):
        if not chain.follows(seq[t - 1], seq[t]):
            failing = t + 1  # 1-based position of the first zero prefix
            return NicenessVerdict(NOT_NICE_P1 if failing % 2 else NOT_NICE_P2, failing)
    return NicenessVerdict(NICE)


def is_nice(chain: ChainSpec, seq) -> bool:
    return all(chain.follows(seq[t - 1], seq[t]) for t in range(1, len(seq)))


def chain_weight(chain: ChainSpec, seq) -> Fraction:
    """Probability of observing the run: (1/N) (2/N)^(len-1) on the support."""
    if not is_nice(chain, seq):
        return ZERO
    n = chain.size
    return Fraction(1, n) * Fraction(2, n) ** (len(seq) - 1)


def encode_tuple(values, size: int) -> int:
    out = 0
    for v in values:
        out = out * size + (v - 1)
    return out


def decode_tuple(ident: int, size: int, length: int) -> tuple[int, ...]:
    digits = []
    for _ in range(length):
        digits.append(ident % size + 1)
        ident //= size
    return tuple(reversed(digits))


def interleave(c, d) -> list[int]:
    """Merge (c_1, d_1, c_2, d_2, ...) as far as both tuples reach."""
    out = []
    for t in range(max(len(c), len(d))):
        if t < len(c):
            out.append(c[t])
        if t < len(d) and t < len(c):
            out.append(d[t])
        elif t < len(d):
            break
    return out


def _prefix(c, d, level: int) -> list[int]:
    """First `level` elements of the interleaving (c_1, d_1, c_2, ...)."""
    out = []
    for i in range(1, level + 1):
        if i % 2:
            out.append(c[(i - 1) // 2])
        else:
            out.append(d[i // 2 - 1])
    return out


def nice_at(chain: ChainSpec, c, d, level: int) -> bool:
    """Whether c and d interleave to a nice sequence through the given level."""
    if level <= 1:
        return True
    return is_nice(chain, _prefix(c, d, level))


def _nice_runs(chain: ChainSpec, length: int) -> Iterator[tuple[int, ...]]:
    """All nice sequences of the given length, depth first."""
    stack = [(a,) for a in range(chain.size, 0, -1)]
    while stack:
        seq = stack.pop()
        if len(seq) == length:
            yield seq
            continue
        for b in chain.succ(seq[-1]):
            stack.append(seq + (b,))


STATE_LABELS = ("0", "1")


def build_u_l(chain: ChainSpec, l: int, budget: int = 4_000_000) -> InfoStructure:
    """Information structure of a length-2l run: odd draws to player 1, even to 2.

    The binary state is 1 with probability c_1/(N+1), so the first signal of
    player 1 doubles as the state's prior weight; both states keep positive
    probability on every run.
    """
    if l < 1:
        raise StructureError("l must be >= 1")
    n = chain.size
    runs = n * (n // 2) ** (2 * l - 1)
    if runs > budget:
        raise BudgetError(f"{runs} runs of length {2 * l} exceed the budget {budget}")
    weight = Fraction(1, n) * Fraction(2, n) ** (2 * l - 1)
    entries: dict[tuple[int, int, int], Fraction] = {}
    for seq in _nice_runs(chain, 2 * l):
        c = seq[0::2]
        d = seq[1::2]
        cid = encode_tuple(c, n)
        did = encode_tuple(d, n)
        p1 = Fraction(seq[0], n + 1)
        entries[(1, cid, did)] = weight * p1
        entries[(0, cid, did)] = weight * (1 - p1)
    return InfoStructure(STATE_LABELS, entries)


def prefix_marginal(u: InfoStructure, size: int, l_from: int, l_to: int) -> InfoStructure:
    """Marginal of a level-l_from structure onto the first l_to signals of each player."""
    if l_to > l_from:
        raise StructureError("cannot extend by marginalizing")
    entries: dict[tuple[int, int, int], Fraction] = {}
    for (k, cid, did), p in u.entries.items():
        c = decode_tuple(cid, size, l_from)[:l_to]
        d = decode_tuple(did, size, l_from)[:l_to]
        key = (k, encode_tuple(c, size), encode_tuple(d, size))
        entries[key] = entries.get(key, ZERO) + p
    return InfoStructure(u.states, entries)


def default_epsilon(size: int) -> Fraction:
    """Largest admitted unit fraction below 1/(10 (N+1)^2)."""
    return Fraction(1, 10 * (size + 1) ** 2 + 1)


def _check_epsilon(size: int, epsilon: Fraction):
    if not (0 < epsilon < Fraction(1, 10 * (size + 1) ** 2)):
        raise StructureError(
            f"epsilon must lie in (0, 1/{10 * (size + 1) ** 2}) for size {size}")


def base_payoff(size: int, k: int, report: int) -> Fraction:
    """Score of reporting `report` for the first draw when the state is k."""
    n1 = size + 1
    return -((k - Fraction(report, n1)) ** 2) + Fraction(size + 2, 6 * n1)


def build_g0(size: int) -> PayoffStructure:
    """One-player scoring block: report the first draw; truthfulness is dominant."""
    block = {}
    for k in (0, 1):
        for i in range(size):
            block[(k, i, 0)] = base_payoff(size, k, i + 1)
    return PayoffStructure(STATE_LABELS, size, block)


def report_bonus(chain: ChainSpec, c_rep, d_rep, epsilon: Fraction) -> Fraction:
    """Nice reports earn epsilon; the first player to break the chain pays 5 epsilon."""
    verdict = niceness(chain, _prefix(c_rep, d_rep, 2 * len(c_rep) - 1))
    if verdict.status == NICE:
        return epsilon
    if verdict.status == NOT_NICE_P2:
        return 5 * epsilon
    return -5 * epsilon


def build_g_p(chain: ChainSpec, p: int, epsilon: Optional[Fraction] = None,
              budget: int = 2_000_000) -> PayoffStructure:
    """Reporting game of depth p: player 1 reports p draws, player 2 reports p-1.

    Player 2's action ids beyond N^(p-1) pad the square block with +1 (never
    chosen by a minimizer, so the value is unaffected).  All entries stay
    within 5/6 + 5 epsilon by construction; this is asserted at build time.
    """
    if p < 1:
        raise StructureError("p must be >= 1")
    n = chain.size
    epsilon = default_epsilon(n) if epsilon is None else frac(epsilon)
    _check_epsilon(n, epsilon)
    n_rows, n_cols = n ** p, n ** (p - 1)
    if n_rows * n_cols > budget:
        raise BudgetError(f"{n_rows}x{n_cols} report block exceeds the budget {budget}")
    cap = Fraction(5, 6) + 5 * epsilon
    block = {}
    for i in range(n_rows):
        c_rep = decode_tuple(i, n, p)
        g0 = (base_payoff(n, 0, c_rep[0]), base_payoff(n, 1, c_rep[0]))
        for j in range(n_cols):
            d_rep = decode_tuple(j, n, p - 1)
            h = report_bonus(chain, c_rep, d_rep, epsilon)
            for k in (0, 1):
                val = g0[k] + h
                if abs(val) > cap:
                    raise StructureError(f"payoff {val} escaped the design bound {cap}")
                if val:
                    block[(k, i, j)] = val
        for j in range(n_cols, n_rows):
            block[(0, i, j)] = ONE
            block[(1, i, j)] = ONE
    return PayoffStructure(STATE_LABELS, n_rows, block)


# --- conditional continuation odds -------------------------------------------


def _partner_runs(chain: ChainSpec, fixed: tuple[int, ...],
                  fixed_is_p1: bool) -> list[tuple[int, ...]]:
    """Opponent tuples jointly nice with the fixed one, each equally likely."""
    l = len(fixed)
    outs: list[tuple[int, ...]] = []
    if fixed_is_p1:
        # d_t must follow c_t and (except at the end) lead to c_{t+1}
        options = []
        for t in range(l):
            if t + 1 < l:
                opts = [d for d in chain.succ(fixed[t]) if chain.follows(d, fixed[t + 1])]
            else:
                opts = list(chain.succ(fixed[t]))
            if not opts:
                return []
            options.append(opts)
    else:
        # c_1 is free to start; c_{t+1} must follow d_t and lead to d_{t+1}
        options = []
        first = [c for c in range(1, chain.size + 1) if chain.follows(c, fixed[0])]
        if not first:
            return []
        options.append(first)
        for t in range(1, l):
            opts = [c for c in chain.succ(fixed[t - 1]) if chain.follows(c, fixed[t])]
            if not opts:
                return []
            options.append(opts)
    import itertools
    return list(itertools.product(*options))


def conditional_nice_odds(chain: ChainSpec, family: str, fixed, report,
                          r: int) -> Optional[Fraction]:
    """P(report stays nice at level r+1 | owner's signals, nice at level r).

    family "p1": fixed are player 1's true signals, report replaces them in
    the interleaving against the random partner; family "p2" mirrors this.
    Returns None when the conditioning event has probability zero.
    """
    partners = _partner_runs(chain, tuple(fixed), family == "p1")
    num = den = 0
    for partner in partners:
        if family == "p1":
            c_side, d_side = report, partner
        else:
            c_side, d_side = partner, report
        if nice_at(chain, c_side, d_side, r):
            den += 1
            if nice_at(chain, c_side, d_side, r + 1):
                num += 1
    if den == 0:
        return None
    return Fraction(num, den)


@dataclass
class UiRecord:
    condition: str
    l: int
    r: int
    fixed: tuple[int, ...]
    report: tuple[int, ...]
    value: Fraction
    ok: bool


@dataclass
class UiReport:
    size: int
    l_max: int
    alpha: Fraction
    tested: int
    vacuous: int
    records: list[UiRecord]
    violations: list[UiRecord]

    @property
    def passed(self) -> bool:
        return not self.violations

    def violation_counts(self) -> dict[str, int]:
        out = {"eq61": 0, "eq62": 0, "eq63": 0}
        for rec in self.violations:
            out[rec.condition] += 1
        return out


def _interval_ok(value: Fraction, alpha: Fraction) -> bool:
    return Fraction(1, 2) - alpha <= value <= Fraction(1, 2) + alpha


def _p1_support(chain: ChainSpec, l: int) -> list[tuple[int, ...]]:
    seen = sorted({seq[0::2] for seq in _nice_runs(chain, 2 * l)})
    return seen


def _p2_support(chain: ChainSpec, l: int) -> list[tuple[int, ...]]:
    return sorted({seq[1::2] for seq in _nice_runs(chain, 2 * l)})


def check_ui(chain: ChainSpec, l_max: int, alpha: Fraction = ALPHA,
             budget: int = 2_000_000) -> UiReport:
    """Exhaustively test the continuation-odds conditions up to level l_max.

    Truthful reports condition to probability one and are not tested; only
    deviations (and the one-step-ahead condition on honest prefixes) are.
    Conditionals whose conditioning event is null are skipped as vacuous.
    """
    n = chain.size
    work = sum(n ** (2 * l + 1) for l in range(1, l_max + 1))
    if work > budget:
        raise BudgetError(f"{work} tuple scans exceed the budget {budget}")
    import itertools
    records: list[UiRecord] = []
    vacuous = 0

    def run(condition, l, r, fixed, report, family):
        nonlocal vacuous
        value = conditional_nice_odds(chain, family, fixed, report, r)
        if value is None:
            vacuous += 1
            return
        records.append(UiRecord(condition, l, r, tuple(fixed), tuple(report),
                                value, _interval_ok(value, alpha)))

    for l in range(1, l_max + 1):
        for c in _p1_support(chain, l):
            for tail in itertools.product(range(1, n + 1), repeat=l):
                rep = (c[0],) + tail
                run("eq61", l, 2 * l, c, rep, "p1")
                for m in range(1, l + 1):
                    if rep[m - 1] != c[m - 1]:
                        for r in (2 * m - 2, 2 * m - 1):
                            run("eq62", l, r, c, rep, "p1")
        for p in range(1, l + 1):
            if p < 2:
                continue  # deviations require a misreported coordinate m <= p-1
            for d in _p2_support(chain, l):
                for rep in itertools.product(range(1, n + 1), repeat=p - 1):
                    for m in range(1, p):
                        if rep[m - 1] != d[m - 1]:
                            for r in (2 * m - 1, 2 * m):
                                run("eq63", l, r, d, rep, "p2")
    violations = [rec for rec in records if not rec.ok]
    return UiReport(n, l_max, alpha, len(records), vacuous, records, violations)


def ui_violation_fraction(chain: ChainSpec, l_max: int = 1,
                          budget: int = 2_000_000) -> Fraction:
    report = check_ui(chain, l_max, budget=budget)
    if report.tested == 0:
        return ZERO
    return Fraction(len(report.violations), report.tested)


def ui_trend_medians(sizes, seeds: int, base_seed: int = 0, l_max: int = 1,
                     budget: int = 2_000_000) -> dict[int, Fraction]:
    """Median violation fraction per chain size over a common block of seeds."""
    out = {}
    for n in sizes:
        fractions = [ui_violation_fraction(sample_chain(n, base_seed + s), l_max, budget)
                     for s in range(seeds)]
        out[n] = statistics.median(fractions)
    return out


# --- subset-overlap statistics ------------------------------------------------


def y_stat(chain: ChainSpec, ins, outs) -> int:
    """Scaled count 2^(#ins+#outs) sum_i prod X_{i,a in ins} prod X_{c in outs, i}."""
    ins, outs = list(ins), list(outs)
    if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
        raise StructureError("statistic indices must be distinct per side")
    if not 0 <= len(ins) <= 2 or not 0 <= len(outs) <= 2 or not ins + outs:
        raise StructureError("between one and two indices per side")
    scale = 2 ** (len(ins) + len(outs))
    total = 0
    for i in range(1, chain.size + 1):
        ok = all(chain.follows(i, a) for a in ins) and all(
            chain.follows(c, i) for c in outs)
        if ok:
            total += 1
    return scale * total


@dataclass
class YStatistics:
    in_a: int          # scaled in-degree of a
    out_c: int         # scaled out-degree of c (always N)
    in_ab: int         # common predecessors of a and b
    out_cd: int        # common successors of c and d
    in_a_out_c: int    # two-step paths c -> . -> a
    in_ab_out_c: int
    in_a_out_cd: int
    in_ab_out_cd: int

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


def y_statistics(chain: ChainSpec, a: int, b: int, c: int, d: int) -> YStatistics:
    if a == b or c == d:
        raise StructureError("statistics need a != b and c != d")
    return YStatistics(
        y_stat(chain, [a], []),
        y_stat(chain, [], [c]),
        y_stat(chain, [a, b], []),
        y_stat(chain, [], [c, d]),
        y_stat(chain, [a], [c]),
        y_stat(chain, [a, b], [c]),
        y_stat(chain, [a], [c, d]),
        y_stat(chain, [a, b], [c, d]),
    )


def _ratios_within(ys: YStatistics, alpha: Fraction) -> Optional[str]:
    """Name of the first failing ratio bound, or None when all seven hold."""
    two_alpha = 2 * alpha
    checks = [
        ("in_ab/in_a", ys.in_ab, ys.in_a),
        ("in_ab_out_c/in_a_out_c", ys.in_ab_out_c, ys.in_a_out_c),
        ("in_a_out_cd/in_a_out_c", ys.in_a_out_cd, ys.in_a_out_c),
        ("in_ab_out_cd/in_a_out_cd", ys.in_ab_out_cd, ys.in_a_out_cd),
        ("out_cd/out_c", ys.out_cd, ys.out_c),
        ("in_a_out_c/out_c", ys.in_a_out_c, ys.out_c),
        ("in_a_out_cd/out_cd", ys.in_a_out_cd, ys.out_cd),
    ]
    for name, num, den in checks:
        if den == 0 or abs(Fraction(num, den) - 1) > two_alpha:
            return name
    return None


@dataclass
class EventEResult:
    holds: bool
    first_violation: Optional[tuple[int, int, int, int, str]]
    scanned: int
    sampled: bool


def event_e_check(chain: ChainSpec, alpha: Fraction = ALPHA,
                  budget: int = 1_000_000, sample: Optional[int] = None,
                  seed: int = 0) -> EventEResult:
    """Scan the seven ratio bounds over tuples a != b, c != d.

    Exhaustive by default; above the budget an explicit sample size must be
    supplied, and the result is flagged as a sampled scan.
    """
    n = chain.size
    total = (n * (n - 1)) ** 2
    if sample is None and total > budget:
        raise BudgetError(
            f"{total} tuples exceed the budget {budget}; pass a sample size")
    if sample is None:
        tuples = ((a, b, c, d)
                  for a in range(1, n + 1) for b in range(1, n + 1) if a != b
                  for c in range(1, n + 1) for d in range(1, n + 1) if c != d)
        sampled = False
    else:
        rng = random.Random(seed)
        def draw():
            for _ in range(sample):
                a, b = rng.sample(range(1, n + 1), 2)
                c, d = rng.sample(range(1, n + 1), 2)
                yield a, b, c, d
        tuples = draw()
        sampled = True
    scanned = 0
    for a, b, c, d in tuples:
        scanned += 1
        bad = _ratios_within(y_statistics(chain, a, b, c, d), alpha)
        if bad is not None:
            return EventEResult(False, (a, b, c, d, bad), scanned, sampled)
    return EventEResult(True, None, scanned, sampled)


# --- the ratio formulas behind the conditional odds ---------------------------


@dataclass
class CrosscheckCase:
    """One instantiated conditional with its closed-form ratio ingredients.

    The denominator statistic counts middle states i with edges i -> a for
    every a in ins and c -> i for every c in outs; the numerator adds the
    priced continuation edge on the side named by extra_side.
    """

    family: str         # "p1" or "p2"
    label: str
    l: int
    r: int
    fixed: tuple[int, ...]
    report: tuple[int, ...]
    ins: tuple[int, ...]
    outs: tuple[int, ...]
    extra: int
    extra_side: str     # "in" or "out"


def _case_formula(chain: ChainSpec, case: CrosscheckCase) -> Optional[Fraction]:
    den = y_stat(chain, case.ins, case.outs)
    if den == 0:
        return None
    if case.extra_side == "in":
        num = y_stat(chain, list(case.ins) + [case.extra], case.outs)
    else:
        num = y_stat(chain, case.ins, list(case.outs) + [case.extra])
    return Fraction(num, den) / 2


def crosscheck_cases(chain: ChainSpec, l: int, tuples) -> list[CrosscheckCase]:
    """Instantiate every covered case shape for the given (family, fixed, report).

    For family "p1", fixed is player 1's true l-tuple and report has l+1
    entries with the same first draw; for "p2", fixed is player 2's true
    l-tuple and report has at most l-1 entries.
    """
    cases = []
    for family, fixed, report in tuples:
        fixed, report = tuple(fixed), tuple(report)
        if family == "p1":
            c, rep = fixed, report
            if rep[l - 1] != c[l - 1]:
                cases.append(CrosscheckCase(
                    "p1", "top-misreported", l, 2 * l, c, rep,
                    (), (c[l - 1], rep[l - 1]), rep[l], "in"))
            else:
                cases.append(CrosscheckCase(
                    "p1", "top-truthful", l, 2 * l, c, rep,
                    (), (c[l - 1],), rep[l], "in"))
            for m in range(2, l + 1):
                if rep[m - 1] == c[m - 1]:
                    continue
                if m == l:
                    cases.append(CrosscheckCase(
                        "p1", "odd-last", l, 2 * m - 1, c, rep,
                        (), (c[l - 1],), rep[l - 1], "out"))
                else:
                    cases.append(CrosscheckCase(
                        "p1", "odd-inner", l, 2 * m - 1, c, rep,
                        (c[m],), (c[m - 1],), rep[m - 1], "out"))
                if rep[m - 2] != c[m - 2]:
                    cases.append(CrosscheckCase(
                        "p1", "even-misreported", l, 2 * m - 2, c, rep,
                        (c[m - 1],), (c[m - 2], rep[m - 2]), rep[m - 1], "in"))
                else:
                    cases.append(CrosscheckCase(
                        "p1", "even-truthful", l, 2 * m - 2, c, rep,
                        (c[m - 1],), (c[m - 2],), rep[m - 1], "in"))
        else:
            d, rep = fixed, report
            for m in range(1, len(rep) + 1):
                if rep[m - 1] == d[m - 1]:
                    continue
                if m == 1:
                    cases.append(CrosscheckCase(
                        "p2", "first", l, 1, d, rep,
                        (d[0],), (), rep[0], "in"))
                elif rep[m - 2] != d[m - 2]:
                    cases.append(CrosscheckCase(
                        "p2", "odd-misreported", l, 2 * m - 1, d, rep,
                        (d[m - 1],), (d[m - 2], rep[m - 2]), rep[m - 1], "in"))
                else:
                    cases.append(CrosscheckCase(
                        "p2", "odd-truthful", l, 2 * m - 1, d, rep,
                        (d[m - 1],), (d[m - 2],), rep[m - 1], "in"))
                if m < l:
                    cases.append(CrosscheckCase(
                        "p2", "even", l, 2 * m, d, rep,
                        (d[m],), (d[m - 1],), rep[m - 1], "out"))
    return cases


@dataclass
class CrosscheckRecord:
    case: CrosscheckCase
    direct: Optional[Fraction]
    formula: Optional[Fraction]

    @property
    def ok(self) -> bool:
        return self.direct == self.formula


@dataclass
class CrosscheckReport:
    records: list[CrosscheckRecord]
    compared: int
    skipped: int

    @property
    def all_equal(self) -> bool:
        return all(rec.ok for rec in self.records)


def ui_formula_crosscheck(chain: ChainSpec, cases) -> CrosscheckReport:
    """Exact agreement between summed conditionals and their ratio formulas.

    Cases whose conditioning event is null are skipped (the ratio formula
    only prices the local coordinate, so it can stay defined there); on every
    non-null case the two sides must agree as rationals, for any chain.
    """
    records = []
    skipped = 0
    for case in cases:
        direct = conditional_nice_odds(chain, case.family, case.fixed,
                                       case.report, case.r)
        if direct is None:
            skipped += 1
            continue
        formula = _case_formula(chain, case)
        records.append(CrosscheckRecord(case, direct, formula))
    return CrosscheckReport(records, len(records), skipped)


# --- reporting-game expectations and value separation -------------------------


def truthful_payoff_bound(chain: ChainSpec, l: int, p: int, reporter: int,
                          received, reported,
                          epsilon: Optional[Fraction] = None) -> Fraction:
    """Expected report bonus for one deviating player against a truthful opponent.

    reporter 1 evaluates the depth-p game after receiving l signals and
    reporting p draws; reporter 2 reports p-1 draws while player 1 relays the
    first p of their true signals.
    """
    n = chain.size
    epsilon = default_epsilon(n) if epsilon is None else frac(epsilon)
    _check_epsilon(n, epsilon)
    received, reported = tuple(received), tuple(reported)
    if reporter == 1:
        if len(received) != l or len(reported) != p:
            raise StructureError("player 1 reports p draws after l signals")
        partners = _partner_runs(chain, received, True)
        if not partners:
            raise StructureError("received signals are off the chain's support")
        total = sum((report_bonus(chain, reported, partner[:p - 1], epsilon)
                     for partner in partners), ZERO)
        return total / len(partners)
    if reporter == 2:
        if len(received) != l or len(reported) != p - 1:
            raise StructureError("player 2 reports p-1 draws after l signals")
        partners = _partner_runs(chain, received, False)
        if not partners:
            raise StructureError("received signals are off the chain's support")
        total = sum((report_bonus(chain, partner[:p], reported, epsilon)
                     for partner in partners), ZERO)
        return total / len(partners)
    raise StructureError("reporter must be 1 or 2")


@dataclass
class SeparationResult:
    l: int
    p: int
    epsilon: Fraction
    value: Fraction
    meets: bool


def verify_separation(chain: ChainSpec, l: int, p: int,
                      epsilon: Optional[Fraction] = None,
                      budget: int = 200_000) -> SeparationResult:
    """Exact value of the depth-p reporting game on the level-l structure.

    meets records whether the value clears +epsilon (for p <= l) or -epsilon
    (for p = l + 1); deeper reports than l + 1 are not admitted.
    """
    n = chain.size
    if not 1 <= p <= l + 1:
        raise StructureError("p must lie in 1..l+1")
    epsilon = default_epsilon(n) if epsilon is None else frac(epsilon)
    u = build_u_l(chain, l)
    n_c = len(u.support1())
    n_d = len(u.support2())
    cells = (n_c * n ** p) * (n_d * n ** (p - 1) + n_c)
    if cells > budget:
        raise BudgetError(f"value LP of ~{cells} cells exceeds the budget {budget}")
    g = build_g_p(chain, p, epsilon)
    value = bayesian_value(u, g)[0]
    meets = value >= epsilon if p <= l else value <= -epsilon
    return SeparationResult(l, p, epsilon, value, meets)


# --- concentration experiments -------------------------------------------------


@dataclass
class TailRow:
    name: str
    gamma: Fraction
    trials: int
    hits: int
    frequency: Fraction
    bound: float
    std_err: float
    in_regime: bool

    @property
    def ok(self) -> bool:
        return float(self.frequency) <= min(self.bound, 1.0) + 3 * self.std_err


def hoeffding_experiment(size: int, gamma, trials: int, seed: int) -> list[TailRow]:
    """Monte Carlo tail frequencies for the overlap statistics vs their bounds.

    One fixed index tuple (1, 2, 3, 4) is tracked per statistic, matching the
    per-tuple character of the bounds.  Rows outside a bound's stated regime
    are still evaluated and flagged.
    """
    n = size
    if n < 4 or n % 2:
        raise StructureError("size must be an even integer >= 4")
    gamma = frac(gamma)
    if gamma <= 0:
        raise StructureError("gamma must be positive")
    rng = random.Random(seed)
    a, b, c, d = 1, 2, 3, 4
    gn = gamma * n
    quarter, half = Fraction(n, 4), Fraction(n, 2)

    names = ["overlap", "in_count", "in_pair_count",
             "in_a", "out_c", "in_ab", "out_cd",
             "in_a_out_c", "in_ab_out_c", "in_a_out_cd", "in_ab_out_cd"]
    hits = dict.fromkeys(names, 0)
    bit = [0] + [1 << (s - 1) for s in range(1, n + 1)]

    for _ in range(trials):
        masks = [0] * (n + 1)
        for s in range(1, n + 1):
            m = 0
            for t in rng.sample(range(n), n // 2):
                m |= 1 << t
            masks[s] = m

        overlap = (masks[a] & masks[b]).bit_count()
        if abs(overlap - quarter) >= gn:
            hits["overlap"] += 1
        in_a = sum(1 for i in range(1, n + 1) if masks[i] & bit[a])
        if abs(in_a - half) >= gn:
            hits["in_count"] += 1
        in_ab = sum(1 for i in range(1, n + 1)
                    if masks[i] & bit[a] and masks[i] & bit[b])
        if abs(in_ab - quarter) >= gn:
            hits["in_pair_count"] += 1

        ys = {
            "in_a": 2 * in_a,
            "out_c": n,
            "in_ab": 4 * in_ab,
            "out_cd": 4 * (masks[c] & masks[d]).bit_count(),
            "in_a_out_c": 4 * sum(1 for i in range(1, n + 1)
                                  if masks[i] & bit[a] and masks[c] & bit[i]),
            "in_ab_out_c": 8 * sum(1 for i in range(1, n + 1)
                                   if masks[i] & bit[a] and masks[i] & bit[b]
                                   and masks[c] & bit[i]),
            "in_a_out_cd": 8 * sum(1 for i in range(1, n + 1)
                                   if masks[i] & bit[a] and masks[c] & bit[i]
                                   and masks[d] & bit[i]),
            "in_ab_out_cd": 16 * sum(1 for i in range(1, n + 1)
                                     if masks[i] & bit[a] and masks[i] & bit[b]
                                     and masks[c] & bit[i] and masks[d] & bit[i]),
        }
        for name, z in ys.items():
            if abs(z - n) >= gn:
                hits[name] += 1

    g = float(gamma)
    e4n = math.exp(4) * n
    bounds = {
        "overlap": 0.5 * e4n * math.exp(-2 * g * g * n),
        "in_count": 2 * math.exp(-2 * n * g * g),
        "in_pair_count": 2 * math.exp(-0.5 * n * g * g),
    }
    y_bound = e4n * math.exp(-(n / 32) * (g / 10) ** 2)
    in_regime = gamma >= Fraction(64, n)
    rows = []
    for name in names:
        bound = bounds.get(name, y_bound)
        freq = Fraction(hits[name], trials)
        se = math.sqrt(float(freq) * (1 - float(freq)) / trials)
        rows.append(TailRow(name, gamma, trials, hits[name], freq, bound, se,
                            True if name in bounds else in_regime))
    return rows
