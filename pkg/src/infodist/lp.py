"""Exact linear programming over rationals.

Two-phase dense simplex with Bland's smallest-index rule: deterministic,
terminating, and entirely in fractions.Fraction (no floats anywhere in the
solve path).  Infeasible problems come back with a verified Farkas
certificate, unbounded ones with a feasible point and an improving ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ConsistencyError, StructureError

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)

MAX, MIN = "max", "min"


def frac(x) -> Fraction:
    """Coerce ints, strings like "2/3", and Fractions to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass
class LinearProgram:
    """min/max objective @ x subject to rows REL rhs and per-variable bounds.

    lower[j] / upper[j] may be None for an unbounded side; the default bound
    box is [0, +inf) per variable.
    """

    sense: str
    objective: list[Fraction]
    rows: list[list[Fraction]]
    relations: list[str]
    rhs: list[Fraction]
    lower: list[Optional[Fraction]]
    upper: list[Optional[Fraction]]

    def __post_init__(self):
        if self.sense not in (MAX, MIN):
            raise StructureError(f"sense must be 'max' or 'min', got {self.sense!r}")
        n = len(self.objective)
        if len(self.rows) != len(self.relations) or len(self.rows) != len(self.rhs):
            raise StructureError("rows, relations and rhs must have equal length")
        for row in self.rows:
            if len(row) != n:
                raise StructureError("constraint row length differs from objective length")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise StructureError(f"unknown relation {rel!r}")
        if len(self.lower) != n or len(self.upper) != n:
            raise StructureError("bounds must have one entry per variable")

    @classmethod
    def build(cls, sense, objective, constraints, lower=None, upper=None) -> "LinearProgram":
        """Convenience constructor; constraints are (coeffs, relation, rhs) triples."""
        objective = [frac(x) for x in objective]
        n = len(objective)
        rows, rels, rhs = [], [], []
        for coeffs, rel, b in constraints:
            rows.append([frac(x) for x in coeffs])
            rels.append(rel)
            rhs.append(frac(b))
        if lower is None:
            lower = [ZERO] * n
        else:
            lower = [None if x is None else frac(x) for x in lower]
        if upper is None:
            upper = [None] * n
        else:
            upper = [None if x is None else frac(x) for x in upper]
        return cls(sense, objective, rows, rels, rhs, lower, upper)


@dataclass
class FarkasCertificate:
    """Multipliers proving that no point satisfies rows and bounds together.

    row_multipliers[i] applies to row i as written (>=0 for <=, <=0 for >=,
    free for =); lower/upper multipliers are nonnegative and keyed by
    variable index.  Validity is the statement checked by verify_farkas.
    """

    row_multipliers: list[Fraction]
    lower_multipliers: dict[int, Fraction]
    upper_multipliers: dict[int, Fraction]


@dataclass
class Optimal:
    value: Fraction
    x: list[Fraction]
    row_duals: list[Fraction]
    reduced_costs: list[Fraction]


@dataclass
class Infeasible:
    certificate: FarkasCertificate


@dataclass
class Unbounded:
    point: list[Fraction]
    ray: list[Fraction]


LpOutcome = Union[Optimal, Infeasible, Unbounded]


def verify_farkas(lp: LinearProgram, cert: FarkasCertificate) -> bool:
    """Exact check that cert proves lp's constraint system empty."""
    y = cert.row_multipliers
    if len(y) != len(lp.rows):
        return False
    for yi, rel in zip(y, lp.relations):
        if rel == LE and yi < 0:
            return False
        if rel == GE and yi > 0:
            return False
    for j, lam in cert.lower_multipliers.items():
        if lam < 0 or lp.lower[j] is None:
            return False
    for j, mu in cert.upper_multipliers.items():
        if mu < 0 or lp.upper[j] is None:
            return False
    n = len(lp.objective)
    for j in range(n):
        combo = sum((yi * row[j] for yi, row in zip(y, lp.rows) if yi), ZERO)
        combo -= cert.lower_multipliers.get(j, ZERO)
        combo += cert.upper_multipliers.get(j, ZERO)
        if combo != 0:
            return False
    total = sum((yi * bi for yi, bi in zip(y, lp.rhs) if yi), ZERO)
    total -= sum(lam * lp.lower[j] for j, lam in cert.lower_multipliers.items())
    total += sum(mu * lp.upper[j] for j, mu in cert.upper_multipliers.items())
    return total < 0


def _satisfies(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    for row, rel, b in zip(lp.rows, lp.relations, lp.rhs):
        lhs = sum((cij * xj for cij, xj in zip(row, x) if cij), ZERO)
        if rel == LE and lhs > b:
            return False
        if rel == GE and lhs < b:
            return False
        if rel == EQ and lhs != b:
            return False
    for xj, lo, hi in zip(x, lp.lower, lp.upper):
        if lo is not None and xj < lo:
            return False
        if hi is not None and xj > hi:
            return False
    return True


def _verify_ray(lp: LinearProgram, point, ray) -> bool:
    if not _satisfies(lp, point):
        return False
    for row, rel in zip(lp.rows, lp.relations):
        drift = sum((cij * dj for cij, dj in zip(row, ray) if cij), ZERO)
        if rel == LE and drift > 0:
            return False
        if rel == GE and drift < 0:
            return False
        if rel == EQ and drift != 0:
            return False
    for dj, lo, hi in zip(ray, lp.lower, lp.upper):
        if lo is not None and dj < 0:
            return False
        if hi is not None and dj > 0:
            return False
    gain = sum((cj * dj for cj, dj in zip(lp.objective, ray) if cj), ZERO)
    return gain > 0 if lp.sense == MAX else gain < 0


# internal standard form: min c.x, A x = b with b >= 0, x >= 0


class _Tableau:
    def __init__(self, A, b, nstruct):
        self.m = len(A)
        self.nstruct = nstruct  # structural + slack columns; artificials follow
        self.ncols = nstruct + self.m
        self.T = [row + [ONE if i == k else ZERO for i in range(self.m)]
                  for k, row in enumerate(A)]
        self.b = list(b)
        self.basis = [nstruct + k for k in range(self.m)]
        self.rowids = list(range(self.m))
        self.obj = [ZERO] * self.ncols
        self.objneg = ZERO  # negated objective value

    def set_phase1(self):
        obj = [ZERO] * self.ncols
        for j in range(self.nstruct, self.ncols):
            obj[j] = ONE
        objneg = ZERO
        # price out the artificial basis
        for row, bi in zip(self.T, self.b):
            for j in range(self.ncols):
                v = row[j]
                if v:
                    obj[j] -= v
            objneg -= bi
        self.obj, self.objneg = obj, objneg

    def set_costs(self, costs):
        obj = list(costs) + [ZERO] * (self.ncols - len(costs))
        objneg = ZERO
        for r, col in enumerate(self.basis):
            cb = obj[col] if col < len(costs) else ZERO
            if cb:
                row = self.T[r]
                for j in range(self.ncols):
                    v = row[j]
                    if v:
                        obj[j] -= cb * v
                objneg -= cb * self.b[r]
        self.obj, self.objneg = obj, objneg

    def pivot(self, r, c):
        row = self.T[r]
        piv = row[c]
        if piv != 1:
            inv = ONE / piv
            self.T[r] = row = [v * inv if v else v for v in row]
            self.b[r] *= inv
        nz = [j for j, v in enumerate(row) if v]
        br = self.b[r]
        for i, other in enumerate(self.T):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                if br:
                    self.b[i] -= f * br
        f = self.obj[c]
        if f:
            obj = self.obj
            for j in nz:
                obj[j] -= f * row[j]
            if br:
                self.objneg -= f * br
        self.basis[r] = c

    def run(self, enterable) -> Optional[int]:
        """Bland iterations; returns entering column on unboundedness, else None."""
        while True:
            enter = -1
            obj = self.obj
            for j in range(self.ncols):
                if obj[j] < 0 and enterable(j):
                    enter = j
                    break
            if enter < 0:
                return None
            leave, best = -1, None
            for i in range(self.m):
                coef = self.T[i][enter]
                if coef > 0:
                    ratio = self.b[i] / coef
                    if best is None or ratio < best or (
                            ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave < 0:
                return enter
            self.pivot(leave, enter)

    def drop_redundant_artificials(self):
        """After a zero-value phase 1, force artificials out or delete their rows."""
        keep = []
        for i in range(self.m):
            if self.basis[i] < self.nstruct:
                keep.append(i)
                continue
            row = self.T[i]
            piv = next((j for j in range(self.nstruct) if row[j]), None)
            if piv is None:
                continue  # redundant equation; drop the row
            self.pivot(i, piv)
            keep.append(i)
        if len(keep) != self.m:
            self.T = [self.T[i] for i in keep]
            self.b = [self.b[i] for i in keep]
            self.basis = [self.basis[i] for i in keep]
            self.rowids = [self.rowids[i] for i in keep]
            self.m = len(keep)

    def solution(self, ncols):
        x = [ZERO] * ncols
        for col, bi in zip(self.basis, self.b):
            if col < ncols:
                x[col] = bi
        return x


# transforms from original variables to standard-form columns

_DIRECT, _SHIFT, _NEG, _FREE = range(4)


class _Standardized:
    def __init__(self, lp: LinearProgram):
        n = len(lp.objective)
        self.kinds = []          # per original var: (kind, col, data)
        self.ncols = 0
        cols = []

        def new_col():
            cols.append(None)
            return len(cols) - 1

        bound_rows = []  # (col, cap) rows x_col <= cap
        for j in range(n):
            lo, hi = lp.lower[j], lp.upper[j]
            if lo is not None and hi is not None and lo > hi:
                raise _BoundsClash(j)
            if lo is not None:
                col = new_col()
                self.kinds.append((_SHIFT, col, lo))
                if hi is not None:
                    bound_rows.append((col, hi - lo))
            elif hi is not None:
                col = new_col()
                self.kinds.append((_NEG, col, hi))
            else:
                cp, cn = new_col(), new_col()
                self.kinds.append((_FREE, cp, cn))
        nvar = len(cols)

        # assemble equality rows: original rows first, then bound rows
        A, b, scales, slack_of = [], [], [], []
        self.n_original = len(lp.rows)
        raw = []
        for row, rel, rb in zip(lp.rows, lp.relations, lp.rhs):
            coeffs = [ZERO] * nvar
            shift = ZERO
            for j, a in enumerate(row):
                if not a:
                    continue
                kind = self.kinds[j]
                if kind[0] == _SHIFT:
                    coeffs[kind[1]] += a
                    shift += a * kind[2]
                elif kind[0] == _NEG:
                    coeffs[kind[1]] -= a
                    shift += a * kind[2]
                else:
                    coeffs[kind[1]] += a
                    coeffs[kind[2]] -= a
            raw.append((coeffs, rel, rb - shift))
        for col, cap in bound_rows:
            coeffs = [ZERO] * nvar
            coeffs[col] = ONE
            raw.append((coeffs, LE, cap))

        nslack = sum(1 for _, rel, _ in raw if rel != EQ)
        self.nstruct = nvar + nslack
        si = 0
        for coeffs, rel, rb in raw:
            full = coeffs + [ZERO] * nslack
            if rel != EQ:
                full[nvar + si] = ONE if rel == LE else -ONE
                si += 1
            if rb < 0:
                full = [-v for v in full]
                rb = -rb
                scales.append(-ONE)
            else:
                scales.append(ONE)
            A.append(full)
            b.append(rb)
        self.A, self.b, self.scales = A, b, scales
        self.nvar = nvar

        sense_flip = -ONE if lp.sense == MAX else ONE
        self.costs = [ZERO] * self.nstruct
        for j, cj in enumerate(lp.objective):
            if not cj:
                continue
            kind = self.kinds[j]
            if kind[0] == _SHIFT:
                self.costs[kind[1]] += sense_flip * cj
            elif kind[0] == _NEG:
                self.costs[kind[1]] -= sense_flip * cj
            else:
                self.costs[kind[1]] += sense_flip * cj
                self.costs[kind[2]] -= sense_flip * cj
        self.const = sum(
            (cj * self._var_shift(j) for j, cj in enumerate(lp.objective) if cj), ZERO)

    def _var_shift(self, j):
        kind = self.kinds[j]
        if kind[0] == _SHIFT:
            return kind[2]
        if kind[0] == _NEG:
            return kind[2]
        return ZERO

    def to_original(self, xstd):
        out = []
        for kind in self.kinds:
            if kind[0] == _SHIFT:
                out.append(kind[2] + xstd[kind[1]])
            elif kind[0] == _NEG:
                out.append(kind[2] - xstd[kind[1]])
            else:
                out.append(xstd[kind[1]] - xstd[kind[2]])
        return out

    def ray_to_original(self, dstd):
        out = []
        for kind in self.kinds:
            if kind[0] == _SHIFT:
                out.append(dstd[kind[1]])
            elif kind[0] == _NEG:
                out.append(-dstd[kind[1]])
            else:
                out.append(dstd[kind[1]] - dstd[kind[2]])
        return out


class _BoundsClash(Exception):
    def __init__(self, var):
        self.var = var


def lp_solve(lp: LinearProgram, want_certificate: bool = True) -> LpOutcome:
    """Solve exactly; outcome is Optimal, Infeasible (with certificate) or Unbounded."""
    try:
        std = _Standardized(lp)
    except _BoundsClash as clash:
        j = clash.var
        cert = FarkasCertificate([ZERO] * len(lp.rows), {j: ONE}, {j: ONE})
        return Infeasible(cert)

    tab = _Tableau(std.A, std.b, std.nstruct)
    nstruct = std.nstruct
    tab.set_phase1()
    col = tab.run(lambda j: j < nstruct)
    if col is not None:
        raise ConsistencyError("phase 1 cannot be unbounded")
    if tab.objneg != 0:
        if not want_certificate:
            return Infeasible(FarkasCertificate([], {}, {}))
        cert = _farkas_certificate(lp)
        return Infeasible(cert)

    tab.drop_redundant_artificials()
    tab.set_costs(std.costs)
    col = tab.run(lambda j: j < nstruct)
    if col is not None:
        xstd = tab.solution(std.nvar)
        dstd = [ZERO] * std.nvar
        if col < std.nvar:
            dstd[col] = ONE
        for r, basic in enumerate(tab.basis):
            if basic < std.nvar:
                dstd[basic] = -tab.T[r][col]
        point = std.to_original(xstd)
        ray = std.ray_to_original(dstd)
        if not _verify_ray(lp, point, ray):
            raise ConsistencyError("unbounded ray failed verification")
        return Unbounded(point, ray)

    xstd = tab.solution(std.nvar)
    x = std.to_original(xstd)
    if not _satisfies(lp, x):
        raise ConsistencyError("optimal point failed feasibility verification")
    # internal objective is c_orig.x - const (min) or const - c_orig.x (max)
    val_int = -tab.objneg
    value = std.const - val_int if lp.sense == MAX else val_int + std.const
    objective_at_x = sum((cj * xj for cj, xj in zip(lp.objective, x) if cj), ZERO)
    if value != objective_at_x:
        raise ConsistencyError("objective bookkeeping mismatch")

    # duals of the scaled equality system, read off the artificial markers
    ystd = {}
    for r, rowid in enumerate(tab.rowids):
        ystd[rowid] = -tab.obj[nstruct + rowid]
    sign = -ONE if lp.sense == MAX else ONE
    duals = []
    for i in range(std.n_original):
        yi = ystd.get(i, ZERO) * std.scales[i]
        duals.append(sign * yi)
    reduced = []
    for j, cj in enumerate(lp.objective):
        rj = cj - sum((duals[i] * lp.rows[i][j] for i in range(len(duals))
                       if lp.rows[i][j]), ZERO)
        reduced.append(rj)
    return Optimal(value, x, duals, reduced)


def _farkas_certificate(lp: LinearProgram) -> FarkasCertificate:
    """Build a Farkas certificate by solving the alternative system directly."""
    m, n = len(lp.rows), len(lp.objective)
    lo_vars = [j for j in range(n) if lp.lower[j] is not None]
    up_vars = [j for j in range(n) if lp.upper[j] is not None]
    nv = m + len(lo_vars) + len(up_vars)
    lam_at = {j: m + k for k, j in enumerate(lo_vars)}
    mu_at = {j: m + len(lo_vars) + k for k, j in enumerate(up_vars)}

    cons = []
    for j in range(n):
        coeffs = [ZERO] * nv
        for i in range(m):
            coeffs[i] = lp.rows[i][j]
        if j in lam_at:
            coeffs[lam_at[j]] = -ONE
        if j in mu_at:
            coeffs[mu_at[j]] = ONE
        cons.append((coeffs, EQ, ZERO))
    norm = [ZERO] * nv
    for i in range(m):
        norm[i] = lp.rhs[i]
    for j in lo_vars:
        norm[lam_at[j]] = -lp.lower[j]
    for j in up_vars:
        norm[mu_at[j]] = lp.upper[j]
    cons.append((norm, EQ, -ONE))

    lower: list[Optional[Fraction]] = []
    upper: list[Optional[Fraction]] = []
    for i in range(m):
        rel = lp.relations[i]
        lower.append(ZERO if rel == LE else None)
        upper.append(ZERO if rel == GE else None)
    lower += [ZERO] * (len(lo_vars) + len(up_vars))
    upper += [None] * (len(lo_vars) + len(up_vars))

    alt = LinearProgram.build(MIN, [ZERO] * nv, cons, lower=lower, upper=upper)
    out = lp_solve(alt, want_certificate=False)
    if not isinstance(out, Optimal):
        raise ConsistencyError("infeasible problem admits no Farkas certificate")
    y = out.x[:m]
    cert = FarkasCertificate(
        y,
        {j: out.x[lam_at[j]] for j in lo_vars if out.x[lam_at[j]]},
        {j: out.x[mu_at[j]] for j in up_vars if out.x[mu_at[j]]},
    )
    if not verify_farkas(lp, cert):
        raise ConsistencyError("extracted Farkas certificate failed verification")
    return cert


def dual_objective(lp: LinearProgram, opt: Optimal) -> Fraction:
    """Objective of the dual solution carried by opt; equals opt.value exactly."""
    total = sum((yi * bi for yi, bi in zip(opt.row_duals, lp.rhs) if yi), ZERO)
    for j, rj in enumerate(opt.reduced_costs):
        if not rj:
            continue
        if lp.sense == MIN:
            bound = lp.lower[j] if rj > 0 else lp.upper[j]
        else:
            bound = lp.lower[j] if rj < 0 else lp.upper[j]
        if bound is None:
            raise ConsistencyError("nonzero reduced cost on an unbounded side")
        total += rj * bound
    return total


def matrix_game_value(matrix) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Exact value and optimal mixed strategies of a zero-sum matrix game.

    Row player maximizes.  Returns (value, row_strategy, col_strategy) and
    verifies both guarantee inequalities before returning.
    """
    if not matrix or not matrix[0]:
        raise StructureError("matrix must be non-empty")
    m, n = len(matrix), len(matrix[0])
    M = []
    for row in matrix:
        if len(row) != n:
            raise StructureError("matrix must be rectangular")
        M.append([frac(v) for v in row])

    # variables: v (free), p_1..p_m >= 0
    cons = []
    for j in range(n):
        coeffs = [ONE] + [-M[i][j] for i in range(m)]
        cons.append((coeffs, LE, ZERO))
    cons.append(([ZERO] + [ONE] * m, EQ, ONE))
    lp = LinearProgram.build(
        MAX, [ONE] + [ZERO] * m, cons,
        lower=[None] + [ZERO] * m, upper=[None] * (m + 1))
    out = lp_solve(lp)
    if not isinstance(out, Optimal):
        raise ConsistencyError("matrix game LP must have an optimum")
    value = out.value
    p = out.x[1:]
    q = [out.row_duals[j] for j in range(n)]

    if any(qj < 0 for qj in q) or sum(q) != 1:
        raise ConsistencyError("column strategy extraction failed")
    for j in range(n):
        if sum(p[i] * M[i][j] for i in range(m)) < value:
            raise ConsistencyError("row strategy fails its guarantee")
    for i in range(m):
        if sum(M[i][j] * q[j] for j in range(n)) > value:
            raise ConsistencyError("column strategy fails its guarantee")
    return value, p, q
