"""Command-line front-end.

Every subcommand reads JSON documents, computes exactly, and emits a JSON
document (or a short human rendering with --format human) whose "run" block
repeats the invocation for provenance.  Exit codes: 0 success, 1 domain
error, 2 budget refusal.

The environment variable INFODIST_BUDGET overrides the default work budgets
of the exhaustive scans and value computations.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import chains, serialize
from .beliefs import hierarchy_distribution
from .distance import compare, value_distance, witness_payoff
from .errors import BudgetError, InfodistError
from .game import bayesian_value
from .lp import frac
from .serialize import (chain_from_dict, chain_to_dict, dumps, frac_str,
                        garbling_to_dict, info_from_dict, info_to_dict,
                        load_path, payoff_from_dict, payoff_to_dict,
                        ui_report_to_dict)
from .weak import ENUMERATION_VERSION, weak_distance


def _budget(default: int) -> int:
    raw = os.environ.get("INFODIST_BUDGET")
    return int(raw) if raw else default


def _strategy_json(strategy) -> list:
    return [{"signal": s, "play": [{"action": a, "p": frac_str(p)}
                                   for a, p in sorted(row.items())]}
            for s, row in sorted(strategy.rows.items())]


def cmd_value(args) -> dict:
    u = info_from_dict(load_path(args.structure))
    g = payoff_from_dict(load_path(args.payoff))
    value, sigma, tau = bayesian_value(u, g)
    return {"value": frac_str(value),
            "sigma": _strategy_json(sigma),
            "tau": _strategy_json(tau)}


def cmd_distance(args) -> dict:
    u = info_from_dict(load_path(args.first))
    v = info_from_dict(load_path(args.second))
    res = value_distance(u, v)
    doc = {"d": frac_str(res.distance),
           "deviation_uv": frac_str(res.deviation_uv),
           "deviation_vu": frac_str(res.deviation_vu),
           "q1": garbling_to_dict(res.q1), "q2": garbling_to_dict(res.q2),
           "q3": garbling_to_dict(res.q3), "q4": garbling_to_dict(res.q4)}
    if args.witness:
        g = witness_payoff(u, v) if res.deviation_uv >= res.deviation_vu \
            else witness_payoff(v, u)
        with open(args.witness, "w") as fh:
            fh.write(dumps(payoff_to_dict(g)))
        doc["witness_path"] = args.witness
    return doc


def cmd_compare(args) -> dict:
    u = info_from_dict(load_path(args.first))
    v = info_from_dict(load_path(args.second))
    cert = compare(u, v)
    doc = {"direction": cert.direction,
           "deviation_uv": frac_str(cert.deviation_uv),
           "deviation_vu": frac_str(cert.deviation_vu)}
    for name in ("q1", "q2", "q3", "q4"):
        q = getattr(cert, name)
        if q is not None:
            doc[name] = garbling_to_dict(q)
    return doc


def cmd_beliefs(args) -> dict:
    u = info_from_dict(load_path(args.structure))
    h = hierarchy_distribution(u, args.order)
    return serialize.hierarchy_to_dict(h)


def cmd_weakdist(args) -> dict:
    u = info_from_dict(load_path(args.first))
    v = info_from_dict(load_path(args.second))
    bracket = weak_distance(u, v, args.terms)
    return {"lower": frac_str(bracket.lower),
            "upper": frac_str(bracket.upper),
            "terms": bracket.terms,
            "version": bracket.version}


def cmd_cx_sample(args) -> dict:
    chain = chains.sample_chain(args.n, args.seed)
    return chain_to_dict(chain)


def cmd_cx_check_ui(args) -> dict:
    chain = chain_from_dict(load_path(args.chain))
    report = chains.check_ui(chain, args.lmax, budget=_budget(2_000_000))
    return ui_report_to_dict(report)


def cmd_cx_build_u(args) -> dict:
    chain = chain_from_dict(load_path(args.chain))
    u = chains.build_u_l(chain, args.l, budget=_budget(4_000_000))
    doc = info_to_dict(u)
    doc["signal_encoding"] = {"base": chain.size, "length": args.l,
                              "order": "big-endian, digits are draw-1"}
    return doc


def cmd_cx_build_g(args) -> dict:
    chain = chain_from_dict(load_path(args.chain))
    epsilon = frac(args.epsilon) if args.epsilon else None
    g = chains.build_g_p(chain, args.p, epsilon, budget=_budget(2_000_000))
    doc = payoff_to_dict(g)
    doc["epsilon"] = frac_str(epsilon if epsilon is not None
                              else chains.default_epsilon(chain.size))
    return doc


def cmd_cx_verify(args) -> dict:
    chain = chain_from_dict(load_path(args.chain))
    epsilon = frac(args.epsilon) if args.epsilon else None
    res = chains.verify_separation(chain, args.l, args.p, epsilon,
                                   budget=_budget(200_000))
    return {"l": res.l, "p": res.p, "epsilon": frac_str(res.epsilon),
            "value": frac_str(res.value), "meets_prop2": res.meets}


def cmd_cx_hoeffding(args) -> dict:
    rows = chains.hoeffding_experiment(args.n, frac(args.gamma),
                                       args.trials, args.seed)
    return {"rows": [{"statistic": r.name, "hits": r.hits,
                      "frequency": frac_str(r.frequency),
                      "bound": r.bound, "std_err": r.std_err,
                      "in_regime": r.in_regime, "ok": r.ok}
                     for r in rows],
            "all_ok": all(r.ok for r in rows)}


def _human(doc: dict, indent: str = "") -> str:
    lines = []
    for key, val in doc.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_human(val, indent + "  "))
        elif isinstance(val, list):
            lines.append(f"{indent}{key}: [{len(val)} items]")
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infodist",
        description="Exact game values, information-structure distances, "
                    "belief hierarchies, and chain experiments.",
        epilog="Set INFODIST_BUDGET to raise the work budgets of exhaustive "
               "scans; over-budget requests exit with status 2.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json")
    common.add_argument("--out", help="write the document here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", parents=[common],
                       help="value of the game on a structure pair")
    p.add_argument("structure")
    p.add_argument("payoff")
    p.set_defaults(fn=cmd_value)

    p = sub.add_parser("distance", parents=[common],
                       help="value-based distance between two structures")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--witness", help="write a maximizing payoff block here")
    p.set_defaults(fn=cmd_distance)

    p = sub.add_parser("compare", parents=[common],
                       help="informativeness order with witnesses")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("beliefs", parents=[common],
                       help="joint distribution of finite-order types")
    p.add_argument("structure")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(fn=cmd_beliefs)

    p = sub.add_parser("weakdist", parents=[common],
                       help="truncated weak metric bracket")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--terms", type=int, default=10)
    p.set_defaults(fn=cmd_weakdist)

    cx = sub.add_parser("cx", help="chain construction and verification").add_subparsers(
        dest="cx_command", required=True)

    p = cx.add_parser("sample", parents=[common], help="draw a chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(fn=cmd_cx_sample)

    p = cx.add_parser("check-ui", parents=[common],
                      help="exhaustive continuation-odds check")
    p.add_argument("chain")
    p.add_argument("--lmax", type=int, required=True)
    p.set_defaults(fn=cmd_cx_check_ui)

    p = cx.add_parser("build-u", parents=[common],
                      help="information structure of a length-2l run")
    p.add_argument("chain")
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(fn=cmd_cx_build_u)

    p = cx.add_parser("build-g", parents=[common],
                      help="depth-p reporting payoff block")
    p.add_argument("chain")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--epsilon")
    p.set_defaults(fn=cmd_cx_build_g)

    p = cx.add_parser("verify", parents=[common],
                      help="exact value of the depth-p reporting game")
    p.add_argument("chain")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--epsilon")
    p.set_defaults(fn=cmd_cx_verify)

    p = cx.add_parser("hoeffding", parents=[common],
                      help="Monte Carlo tails vs concentration bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(fn=cmd_cx_hoeffding)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = {"tool": "infodist", "argv": list(argv) if argv is not None
           else sys.argv[1:]}
    try:
        doc = args.fn(args)
    except BudgetError as exc:
        sys.stderr.write(f"budget refusal: {exc}\n")
        return 2
    except InfodistError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    doc = {"run": run, **doc}
    text = dumps(doc) if args.format == "json" else _human(doc) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
