"""Finite-order belief hierarchies induced by an information structure.

Order-1 types are conditional laws on states given the owner's signal;
order-n types are conditional laws of (state, opponent's order-(n-1) type).
Types are represented by cumulative fingerprints (each order keeps the one
below), built from state labels and exact probabilities only, so structures
that are relabelings of each other produce identical objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructureError
from .lp import ZERO
from .structures import InfoStructure

Fingerprint = tuple


def _signal_fingerprints(u: InfoStructure, order: int):
    """Cumulative type fingerprints for both players up to the given order."""
    if order < 1:
        raise StructureError("belief order must be >= 1")
    p1 = u.marginal1()
    p2 = u.marginal2()
    by_c: dict[int, list] = {}
    by_d: dict[int, list] = {}
    for (k, c, d), p in u.entries.items():
        by_c.setdefault(c, []).append((k, d, p))
        by_d.setdefault(d, []).append((k, c, p))

    f1 = {c: tuple(sorted(
        (u.states[k], sum((p for k2, _, p in rows if k2 == k), ZERO) / p1[c])
        for k in {k for k, _, _ in rows}))
        for c, rows in by_c.items()}
    f2 = {d: tuple(sorted(
        (u.states[k], sum((p for k2, _, p in rows if k2 == k), ZERO) / p2[d])
        for k in {k for k, _, _ in rows}))
        for d, rows in by_d.items()}

    for _ in range(order - 1):
        nf1 = {}
        for c, rows in by_c.items():
            law: dict = {}
            for k, d, p in rows:
                atom = (u.states[k], f2[d])
                law[atom] = law.get(atom, ZERO) + p / p1[c]
            nf1[c] = (f1[c], tuple(sorted(law.items())))
        nf2 = {}
        for d, rows in by_d.items():
            law = {}
            for k, c, p in rows:
                atom = (u.states[k], f1[c])
                law[atom] = law.get(atom, ZERO) + p / p2[d]
            nf2[d] = (f2[d], tuple(sorted(law.items())))
        f1, f2 = nf1, nf2
    return f1, f2


@dataclass
class TypePartition:
    """Grouping of one player's signals by equality of order-n types."""

    order: int
    player: int
    classes: tuple[tuple[int, ...], ...]
    fingerprints: tuple[Fingerprint, ...]

    def class_of(self, signal: int) -> int:
        for n, cls in enumerate(self.classes):
            if signal in cls:
                return n
        raise StructureError(f"signal {signal} not in the partition")

    def refines(self, coarser: "TypePartition") -> bool:
        return all(any(set(fine) <= set(c) for c in coarser.classes)
                   for fine in self.classes)


def belief_partition(u: InfoStructure, player: int, order: int) -> TypePartition:
    """Partition of a player's support signals into equal order-n types."""
    if player not in (1, 2):
        raise StructureError("player must be 1 or 2")
    f1, f2 = _signal_fingerprints(u, order)
    fp = f1 if player == 1 else f2
    groups: dict[Fingerprint, list[int]] = {}
    for sig, key in fp.items():
        groups.setdefault(key, []).append(sig)
    keys = sorted(groups)
    return TypePartition(order, player,
                         tuple(tuple(sorted(groups[k])) for k in keys),
                         tuple(keys))


@dataclass
class HierarchyDistribution:
    """Joint law of (state, order-n type of 1, order-n type of 2), canonically sorted."""

    order: int
    atoms: tuple[tuple[str, Fingerprint, Fingerprint, Fraction], ...]


def hierarchy_distribution(u: InfoStructure, order: int) -> HierarchyDistribution:
    """Push u forward through both players' order-n types."""
    f1, f2 = _signal_fingerprints(u, order)
    law: dict = {}
    for (k, c, d), p in u.entries.items():
        atom = (u.states[k], f1[c], f2[d])
        law[atom] = law.get(atom, ZERO) + p
    atoms = tuple((s, a, b, p) for (s, a, b), p in sorted(law.items()))
    return HierarchyDistribution(order, atoms)


def hierarchy_equal(u: InfoStructure, v: InfoStructure, order: int) -> bool:
    """Exact equality of the induced order-n joint type distributions."""
    if u.states != v.states:
        raise StructureError("state sets differ")
    return hierarchy_distribution(u, order) == hierarchy_distribution(v, order)


def stabilization_order(u: InfoStructure, cap: int = 64) -> int:
    """First n whose partitions (both players) coincide with those at n+1."""
    prev = (belief_partition(u, 1, 1).classes, belief_partition(u, 2, 1).classes)
    for n in range(2, cap + 1):
        cur = (belief_partition(u, 1, n).classes, belief_partition(u, 2, n).classes)
        if cur == prev:
            return n - 1
        prev = cur
    raise StructureError(f"partitions did not stabilize within {cap} orders")
