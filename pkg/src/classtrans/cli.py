"""Command line front end: ``classtrans <subcommand> ...``.

Exit status is 0 on success, 1 on invalid input and 2 when an internal
invariant check fails.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import certificates as cert
from . import gamma
from .oracle import OracleConfig, order_of_product
from .rcwa import InvariantViolation, product_map
from .residue import apply, parse_class_transposition
from .survey import (
    SurveyConfig,
    check_kohl_set,
    summary_json,
    theorem_consistency_sweep,
    timed_survey,
    write_csv,
    write_json,
)

_DEFAULTS = OracleConfig()


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _transposition(text):
    try:
        return parse_class_transposition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="classtrans", description="Class transpositions of Z and the orders of their products.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("apply", help="image of an integer under a class transposition")
    s.add_argument("tau", type=_transposition)
    s.add_argument("x", type=int)

    s = sub.add_parser("order", help="order of tau1 * tau2 (tau1 applied first)")
    s.add_argument("tau1", type=_transposition)
    s.add_argument("tau2", type=_transposition)
    s.add_argument("--power-max", type=int, default=_DEFAULTS.power_n_max)
    s.add_argument("--mod-max", type=int, default=_DEFAULTS.power_mod_max)
    s.add_argument("--json", action="store_true")
    s.add_argument("--show-map", action="store_true", help="print the piece table of the product")

    s = sub.add_parser("graph", help="components of the graph of a pair within |mu| <= bound")
    s.add_argument("tau1", type=_transposition)
    s.add_argument("tau2", type=_transposition)
    s.add_argument("--bound", type=int, default=_DEFAULTS.window_bound)
    s.add_argument("--dump-edges", action="store_true")

    s = sub.add_parser("classify", help="horizontal / common-vertex / equal-residue / equal-modulus flags")
    s.add_argument("tau1", type=_transposition)
    s.add_argument("tau2", type=_transposition)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("cycle", help="closed-form orbit of 2 under [0(2),1(2)] * [0(2),k(m)]")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--t-max", type=int, default=8)

    s = sub.add_parser("survey", help="orders of all pairs with moduli <= mod-max")
    s.add_argument("--mod-max", type=int, required=True)
    s.add_argument("--filter", default="", help="comma-separated flags, e.g. common_vertex,horizontal")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--csv", dest="csv_path")
    s.add_argument("--json", dest="json_path")
    s.add_argument("--sweep", action="store_true", help="also cross-check every applicable theorem")
    s.add_argument("--power-max", type=int, default=_DEFAULTS.power_n_max)
    s.add_argument("--power-mod-max", type=int, default=_DEFAULTS.power_mod_max)

    s = sub.add_parser("witness", help="integer chain showing arbitrarily long graph components")
    s.add_argument("kind", choices=["common-vertex", "equal-residue"])
    s.add_argument("tau1", type=_transposition)
    s.add_argument("tau2", type=_transposition)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--h", type=int, default=1, help="scale of the equal-residue chain")
    return p


def _cmd_apply(args, out):
    print(apply(args.tau, args.x), file=out)


def _cmd_order(args, out):
    cfg = OracleConfig(power_n_max=args.power_max, power_mod_max=args.mod_max)
    verdict = order_of_product(args.tau1, args.tau2, cfg)
    if args.json:
        rep = verdict.to_report()
        rep["consistent"] = verdict.consistent
        print(json.dumps(rep), file=out)
    else:
        print(verdict.describe(), file=out)
        print("method: " + ", ".join(verdict.method), file=out)
        if not verdict.consistent:
            print("warning: verdict conflicts with an allowed-order certificate", file=out)
    if args.show_map:
        print(product_map(args.tau1, args.tau2).table(), file=out)


def _cmd_graph(args, out):
    g = gamma.build_window(args.tau1, args.tau2, args.bound)
    if args.dump_edges:
        print(g.dump_edges(), file=out)
    for comp in gamma.components(g):
        print(comp.summary(), file=out)


def _cmd_classify(args, out):
    flags = cert.classify_pair(args.tau1, args.tau2)
    if args.json:
        print(json.dumps({f: getattr(flags, f) for f in cert.PairClass.FLAGS}), file=out)
    else:
        for f in cert.PairClass.FLAGS:
            print(f"{f}: {str(getattr(flags, f)).lower()}", file=out)


def _cmd_cycle(args, out):
    prefix = cert.parity_swap_cycle_prefix(args.k, args.m, args.t_max)
    iterated = cert.parity_swap_orbit(args.k, args.m, len(prefix))
    print(", ".join(map(str, prefix)), file=out)
    print("iteration check: " + ("ok" if iterated == prefix else f"MISMATCH {iterated}"), file=out)
    if iterated != prefix:
        raise InvariantViolation("closed form disagrees with iteration")


def _cmd_survey(args, out):
    mask = cert.PairClass.from_names(args.filter.split(",")) if args.filter else None
    cfg = SurveyConfig(
        args.mod_max,
        OracleConfig(power_n_max=args.power_max, power_mod_max=args.power_mod_max),
        mask,
        args.workers,
    )
    hist, records, runtime = timed_survey(cfg, keep_records=bool(args.csv_path))
    kohl = check_kohl_set(hist)
    discrepancies = theorem_consistency_sweep(cfg) if args.sweep else []
    print(f"pairs: {hist.total}", file=out)
    for order, n in sorted(hist.finite_counts.items()):
        _, s1, s2 = hist.realizations[order]
        print(f"order {order}: {n} (e.g. {s1} {s2})", file=out)
    print(f"infinite (certified): {hist.infinite_certified}", file=out)
    print(f"infinite (heuristic): {hist.infinite_heuristic}", file=out)
    print(f"inconclusive: {hist.inconclusive}", file=out)
    if hist.errors:
        print(f"errors: {hist.errors}", file=out)
    print(f"all finite orders in Kohl's set: {str(kohl.all_in_kohl_set).lower()}", file=out)
    print(f"all finite orders divide 840: {str(kohl.all_divide_840).lower()}", file=out)
    for pair, order in kohl.violations:
        print(f"violation: order {order} at {pair[0]} {pair[1]}", file=out)
    if args.sweep:
        print(f"theorem discrepancies: {len(discrepancies)}", file=out)
        for d in discrepancies:
            print(f"  {d}", file=out)
    print(f"runtime: {runtime:.1f}s", file=out)
    if args.csv_path:
        write_csv(args.csv_path, records)
    if args.json_path:
        write_json(args.json_path, summary_json(cfg, hist, kohl, discrepancies, runtime))


def _cmd_witness(args, out):
    if args.kind == "common-vertex":
        w = cert.common_vertex_chain_witness(args.tau1, args.tau2, args.n)
    else:
        w = cert.equal_residue_chain_witness(args.tau1, args.tau2, args.n, args.h)
    for i, (p, q, d) in enumerate(w.equations):
        print(f"{p}*{w.chain[i]} - {q}*{w.chain[i + 1]} = {d}", file=out)
    print("x = (" + ", ".join(map(str, w.chain)) + ")", file=out)
    print("substitution check: " + ("ok" if w.verify() else "FAILED"), file=out)
    if not w.verify():
        raise InvariantViolation("witness failed its substitution check")


_COMMANDS = {
    "apply": _cmd_apply,
    "order": _cmd_order,
    "graph": _cmd_graph,
    "classify": _cmd_classify,
    "cycle": _cmd_cycle,
    "survey": _cmd_survey,
    "witness": _cmd_witness,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _COMMANDS[args.command](args, out)
    except (InvariantViolation, RuntimeError, AssertionError) as exc:
        print(f"internal error: {exc}", file=err)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
