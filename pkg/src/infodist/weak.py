"""A fixed dense enumeration of payoff structures and the induced weak metric.

The metric value depends on the enumeration, so the enumeration is versioned:
blocks are listed diagonally over (size L, dyadic resolution m), entries
running over the grid -1, -1 + 2^(1-m), ..., 1 in lexicographic order over
(state, row, column).  The induced topology does not depend on these choices;
reported numbers do, hence the version tag in all outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError, StructureError
from .game import bayesian_value
from .lp import ZERO, frac
from .structures import InfoStructure, PayoffStructure, sup_distance

ENUMERATION_VERSION = "dyadic-diagonal-v1"


def _grid(m: int) -> list[Fraction]:
    step = Fraction(2) ** (1 - m)
    return [Fraction(-1) + n * step for n in range(2 ** m + 1)]


def _stage_pairs():
    """(L, m) pairs in diagonal order: (1,0), (1,1), (2,0), (1,2), (2,1), (3,0), ..."""
    t = 0
    while True:
        for L in range(1, t + 2):
            yield L, t - (L - 1)
        t += 1


@dataclass
class PayoffEnumeration:
    """Deterministic index -> payoff structure map, dense in the sup norm."""

    states: tuple[str, ...]
    version: str = ENUMERATION_VERSION

    def block_size(self, L: int, m: int) -> int:
        return (2 ** m + 1) ** (len(self.states) * L * L)

    def structure(self, n: int) -> PayoffStructure:
        """The n-th structure, 1-based."""
        if n < 1:
            raise StructureError("enumeration index must be >= 1")
        rest = n - 1
        for L, m in _stage_pairs():
            count = self.block_size(L, m)
            if rest < count:
                return self._decode(L, m, rest)
            rest -= count

    def _decode(self, L: int, m: int, index: int) -> PayoffStructure:
        grid = _grid(m)
        base = len(grid)
        cells = [(k, i, j) for k in range(len(self.states))
                 for i in range(L) for j in range(L)]
        digits = []
        for _ in cells:
            digits.append(index % base)
            index //= base
        digits.reverse()  # first cell is the most significant digit
        block = {cell: grid[dig] for cell, dig in zip(cells, digits) if grid[dig]}
        return PayoffStructure(self.states, L, block)

    def find_close(self, g: PayoffStructure, tolerance, limit: int = 10 ** 9) -> int:
        """Smallest index within tolerance of g in sup norm.

        Within a block the cells are independent digits, so the scan picks
        the smallest acceptable digit per cell instead of materializing every
        candidate; the result is the exact minimum of the exhaustive scan.
        """
        if g.states != self.states:
            raise StructureError("state sets differ")
        tolerance = frac(tolerance)
        offset = 0
        for L, m in _stage_pairs():
            count = self.block_size(L, m)
            if offset >= limit:
                break
            if L != g.size and tolerance < 1:
                # blocks of another size disagree on the implied extension by 1
                offset += count
                continue
            grid = _grid(m)
            base = len(grid)
            index = 0
            feasible = True
            for k in range(len(self.states)):
                for i in range(L):
                    for j in range(L):
                        want = g.value(k, i, j)
                        digit = next((n for n, val in enumerate(grid)
                                      if abs(val - want) <= tolerance), None)
                        if digit is None:
                            feasible = False
                            break
                        index = index * base + digit
                    if not feasible:
                        break
                if not feasible:
                    break
            if feasible:
                n = offset + index + 1
                if n > limit:
                    raise BudgetError(f"no index within {tolerance} in the first {limit}")
                return n
            offset += count
        raise BudgetError(f"no index within {tolerance} in the first {limit}")


def enumerate_payoff(states, n: int) -> PayoffStructure:
    """Convenience wrapper around PayoffEnumeration.structure."""
    return PayoffEnumeration(tuple(states)).structure(n)


@dataclass
class WeakDistanceBracket:
    lower: Fraction
    upper: Fraction
    terms: int
    version: str
    gaps: tuple[Fraction, ...]


def weak_distance(u: InfoStructure, v: InfoStructure, terms: int) -> WeakDistanceBracket:
    """Truncated weak metric: sum of 2^-n |value gap on the n-th block|.

    The truncation is reported as an exact interval: the tail adds at most
    2 * 2^-terms because every value gap is at most 2.
    """
    if u.states != v.states:
        raise StructureError("state sets differ")
    if terms < 1:
        raise StructureError("terms must be >= 1")
    enum = PayoffEnumeration(u.states)
    lower = ZERO
    gaps = []
    for n in range(1, terms + 1):
        g = enum.structure(n)
        gap = abs(bayesian_value(u, g)[0] - bayesian_value(v, g)[0])
        gaps.append(gap)
        lower += Fraction(1, 2 ** n) * gap
    upper = lower + 2 * Fraction(1, 2 ** terms)
    return WeakDistanceBracket(lower, upper, terms, enum.version, tuple(gaps))
