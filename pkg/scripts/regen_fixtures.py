#!/usr/bin/env python3
"""Regenerate the JSON fixture corpus under fixtures/ from the package fixtures."""

import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from infodist import fixtures
from infodist.serialize import dumps, info_to_dict, payoff_to_dict

ROOT = pathlib.Path(__file__).resolve().parents[1] / "fixtures"

STRUCTURES = {
    "complete_info.json": fixtures.u_complete(),
    "p1_informed.json": fixtures.u_p1_knows(),
    "p2_informed.json": fixtures.u_p2_knows(),
    "p2_informed_swapped.json": fixtures.u_p2_knows_swapped(),
    "partial_overlap.json": fixtures.u_partial(),
    "trivial.json": fixtures.u_trivial(),
    "maxinfo_half.json": fixtures.u_full_info_p1((Fraction(1, 2), Fraction(1, 2))),
    "mininfo_half.json": fixtures.u_full_info_p2((Fraction(1, 2), Fraction(1, 2))),
    "maxinfo_3_5.json": fixtures.u_full_info_p1((Fraction(3, 5), Fraction(2, 5))),
    "mininfo_3_5.json": fixtures.u_full_info_p2((Fraction(3, 5), Fraction(2, 5))),
    "maxinfo_9_10.json": fixtures.u_full_info_p1((Fraction(9, 10), Fraction(1, 10))),
    "mininfo_9_10.json": fixtures.u_full_info_p2((Fraction(9, 10), Fraction(1, 10))),
}
for n in range(1, 11):
    STRUCTURES[f"ladder{n}.json"] = fixtures.u_ladder(n)

PAYOFFS = {
    "payoff_basic.json": fixtures.g_basic(),
    "payoff_reveal.json": fixtures.g_reveal(),
    "payoff_guess.json": fixtures.g_guess(),
}


def main():
    ROOT.mkdir(exist_ok=True)
    for name, u in STRUCTURES.items():
        (ROOT / name).write_text(dumps(info_to_dict(u)))
    for name, g in PAYOFFS.items():
        (ROOT / name).write_text(dumps(payoff_to_dict(g)))
    print(f"wrote {len(STRUCTURES) + len(PAYOFFS)} fixtures to {ROOT}")


if __name__ == "__main__":
    main()
