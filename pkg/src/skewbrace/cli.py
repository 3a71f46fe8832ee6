"""Command-line front end: ingestion, dispatch, deterministic JSON/DOT reports.

Exit codes: 0 on success, 1 when a verification failed (the report is still
emitted), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import braces, groups, lattice, rota, structure, systems, words
from .config import Limits, SampleConfig
from .errors import AlgebraError


def _emit_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def emit(report, fmt: str = "json") -> str:
    """Serialize a report deterministically; DOT is only valid for system graphs."""
    if fmt == "json":
        return _emit_json(report)
    if fmt == "dot":
        if isinstance(report, systems.BraceSystemGraph):
            return systems.export_graph(report, "dot")
        raise AlgebraError("dot output is only available for system graphs")
    raise AlgebraError(f"unsupported format {fmt!r}")


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _config_echo(args) -> dict:
    return {
        "seed": args.seed,
        "samples": args.samples,
        "max_order": args.max_order,
    }


def _limits(args) -> Limits:
    return Limits(max_group_order=args.max_order)


def _sampling(args) -> SampleConfig:
    return SampleConfig(samples=args.samples, seed=args.seed)


def _parse_elements(text: str) -> tuple:
    return tuple(int(tok) for tok in text.split(",") if tok != "")


def _brace_payload(brace) -> dict:
    payload = braces.brace_to_json(brace)
    payload["classify"] = braces.classify(brace).as_dict()
    return payload


# ---------------------------------------------------------------------------
# Command handlers: each returns (report, ok) or (graph, ok) for systems


def _cmd_verify_group(args):
    data = _load_json(args.infile)
    if "table" in data:
        check = groups.verify_group(data["table"], name=data.get("name", ""))
        return check.as_report(), check.ok
    group = groups.group_from_json(data)  # generator format: raises on bad input
    return {"group_ok": True, "order": group.order,
            "relabeling": None, "violations": []}, True


def _cmd_verify_brace(args):
    data = _load_json(args.infile)
    rep = braces.verify_brace(data["add"], data["circ"])
    report = rep.as_report()
    if rep.left_ok:
        brace = braces.brace_from_json(data)
        report["classify"] = braces.classify(brace).as_dict()
    return report, rep.left_ok


def _cmd_classify(args):
    brace = braces.brace_from_json(_load_json(args.infile))
    rep = braces.verify_brace([list(r) for r in brace.add.table],
                              [list(r) for r in brace.circ.table])
    report = rep.as_report()
    report["classify"] = braces.classify(brace).as_dict()
    return report, True


def _cmd_construct(args):
    kind = args.kind
    if kind == "opposite":
        brace = braces.opposite(braces.brace_from_json(_load_json(args.infile)))
        return {"construct": kind, "brace": _brace_payload(brace),
                "trivial": brace.is_trivial}, True
    group = groups.group_from_json(_load_json(args.group))
    if kind == "trivial":
        brace = braces.trivial_brace(group)
    elif kind == "op":
        brace = braces.op_brace(group)
    elif kind == "from-lambda":
        payload = _load_json(args.lam)
        brace = braces.construct_from_lambda(group, [tuple(m) for m in payload["maps"]],
                                             args.mode)
    elif kind == "exact-factorization":
        brace = braces.construct_exact_factorization(
            group, _parse_elements(args.part_a), _parse_elements(args.part_b))
    elif kind == "unification":
        payload = _load_json(args.unification)
        brace = braces.construct_unification(
            group, payload["f"], payload["alpha"], payload.get("epsilon", 1))
    else:  # pragma: no cover - argparse restricts choices
        raise AlgebraError(f"unknown construction {kind!r}")
    return {"construct": kind, "brace": _brace_payload(brace)}, True


def _cmd_enumerate(args):
    group = groups.group_from_json(_load_json(args.infile))
    found = braces.enumerate_circ_ops(group, _limits(args))
    return {
        "order": group.order,
        "count": len(found),
        "braces": [{"circ": [list(r) for r in b.circ.table],
                    "classify": braces.classify(b).as_dict()} for b in found],
    }, True


def _cmd_system(args):
    group = groups.group_from_json(_load_json(args.group))
    if args.kind == "linear":
        lam = [tuple(m) for m in _load_json(args.lam)["maps"]]
        graph = systems.build_linear_system(group, lam, depth=args.depth,
                                            include_negative=args.include_negative)
        period = systems.detect_period(graph)
    elif args.kind == "union":
        lam1 = [tuple(m) for m in _load_json(args.lam)["maps"]]
        lam2 = [tuple(m) for m in _load_json(args.lam2)["maps"]]
        graph = systems.union_systems(systems.build_linear_system(group, lam1),
                                      systems.build_linear_system(group, lam2))
        period = None
    elif args.kind == "rb":
        op = rota.rb_from_json(_load_json(args.rb))
        graph = systems.build_rb_multibrace(group, op, args.k)
        period = None
    else:  # rooted
        found = braces.enumerate_circ_ops(group, _limits(args))
        graph = systems.build_rooted_system(group, [b.circ for b in found])
        period = None
    if args.format == "dot":
        return graph, True
    report = systems.system_to_json(graph)
    if period is not None:
        report["period"] = period
    if graph.hypotheses_met is not None:
        report["hypotheses_met"] = graph.hypotheses_met
    return report, all(status == "verified" for status in graph.edges.values())


def _cmd_structure(args):
    brace = braces.brace_from_json(_load_json(args.infile))
    ideals = structure.all_ideals(brace, Limits())
    chain = structure.triviality_step(brace)
    report = {
        "ideals": [list(i) for i in ideals],
        "kernel": list(brace.lam.kernel),
        "st": chain.step if chain else None,
        "chain": [list(part) for part in chain.chain] if chain else None,
        "automorphism_count": len(structure.brace_automorphisms(brace, _limits(args))),
    }
    if brace.lam.anti_homomorphic_on_add:
        report["naturality"] = structure.naturality_report(brace)
    return report, True


def _cmd_freegroup(args):
    if args.action == "verify-cyclic":
        report = words.verify_cyclic1(args.n)
        return report, report["mismatch_count"] == 0 and report["rank_consistent"]
    if args.action == "verify-t4":
        w = words.word_from_text(args.n, args.word)
        report = words.verify_t4(args.n, w, window=args.window)
        return report, report["modified_shift_ok"] and report["raw_conjugation_ok"]
    if args.action == "check":
        if args.theta == "cycle":
            theta = words.GeneratorCycle(args.rank)
        elif args.theta == "identity":
            theta = words.GeneratorCycle(args.rank, shift=0)
        else:
            theta = words.Inner(words.word_from_text(args.rank, args.inner_word))
        report = words.sampled_brace_check(theta, _sampling(args))
        return report, report["failure_count"] == 0
    # rewrite
    modulus = None if args.modulus == "inf" else int(args.modulus)
    rewriter = words.SchreierRewriter(args.rank, modulus)
    w = words.word_from_text(args.rank, args.word)
    tokens = rewriter.rewrite(w)
    return {
        "word": words.word_to_text(w),
        "rank": args.rank,
        "modulus": args.modulus,
        "generators": [[rewriter.token_name(tok), e] for tok, e in tokens],
    }, True


def _cmd_lattice(args):
    report = lattice.lattice_system_check(args.p, depth=args.depth,
                                          sampling=_sampling(args))
    return report, report["failure_count"] == 0


def _cmd_rb(args):
    group = groups.group_from_json(_load_json(args.group)) if args.group else None
    if args.action in ("brace", "search") and group is None:
        raise ValueError("--group is required for this action")
    if args.action == "check":
        op = rota.rb_from_json(_load_json(args.rb))
        if isinstance(op, rota.FreeRb):
            report = rota.free_is_rb(op, _sampling(args))
            return report, report["failure_count"] == 0
        if group is None:
            raise ValueError("--group is required to check a finite operator")
        check = rota.is_rb(group, op)
        return {"is_rb": check.ok,
                "witness": list(check.witness) if check.witness else None}, check.ok
    if args.action == "brace":
        op = rota.rb_from_json(_load_json(args.rb))
        brace = rota.rb_brace(group, op)
        report = {"brace": _brace_payload(brace)}
        report.update(rota.rb_symmetry_check(group, op))
        return report, True
    if args.action == "search":
        if group.order <= 6:
            found = rota.rb_self_maps(group)
            scope = "self-maps"
        else:
            found = rota.rb_endomorphisms(group, _limits(args))
            scope = "endomorphisms"
        rows = []
        for op in found:
            sym = rota.rb_symmetry_check(group, op)
            hom = rota.rb_lambda_hom_check(group, op)
            rows.append({"map": list(op), "symmetric": sym["symmetric"],
                         "lambda_homomorphic": hom["lambda_homomorphic"]})
        return {"order": group.order, "scope": scope,
                "count": len(found), "operators": rows}, True
    # free
    report = rota.free_rb_report(args.m, _sampling(args))
    return report, report["failure_count"] == 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewbrace",
        description="Construct, verify and enumerate skew braces and brace systems.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=500)
    parser.add_argument("--max-order", type=int, default=24, dest="max_order")
    parser.add_argument("--out", default=None, help="also write the report to this path")
    parser.add_argument("--format", choices=("json", "dot"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-group", help="check the group axioms on a table file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_verify_group)

    p = sub.add_parser("verify-brace", help="check both brace laws on a brace file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_verify_brace)

    p = sub.add_parser("classify", help="structural flags of a brace file")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("construct", help="build a brace from one of the constructions")
    p.add_argument("--kind", required=True,
                   choices=("trivial", "op", "from-lambda", "exact-factorization",
                            "unification", "opposite"))
    p.add_argument("--group", help="group file (all kinds except opposite)")
    p.add_argument("--in", dest="infile", help="brace file (kind=opposite)")
    p.add_argument("--lambda", dest="lam", help='file {"maps": [[...], ...]}')
    p.add_argument("--mode", choices=("homomorphic", "anti_homomorphic"),
                   default="homomorphic")
    p.add_argument("--a", dest="part_a", help="comma-separated subgroup elements")
    p.add_argument("--b", dest="part_b", help="comma-separated subgroup elements")
    p.add_argument("--unification", help='file {"f": [...], "alpha": [[...]], "epsilon": 1}')
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("enumerate", help="all skew braces over a fixed additive group")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("system", help="build a brace system graph")
    p.add_argument("--kind", required=True, choices=("linear", "union", "rb", "rooted"))
    p.add_argument("--group", required=True)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--lambda2", dest="lam2")
    p.add_argument("--rb")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--include-negative", action="store_true")
    p.set_defaults(handler=_cmd_system)

    p = sub.add_parser("structure", help="ideals, triviality chain, automorphisms")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(handler=_cmd_structure)

    p = sub.add_parser("freegroup", help="free-group word verifications")
    p.add_argument("action", choices=("verify-cyclic", "verify-t4", "check", "rewrite"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--w", dest="word", default="x1")
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--theta", choices=("cycle", "identity", "inner"), default="cycle")
    p.add_argument("--inner-word", dest="inner_word", default="x1")
    p.add_argument("--modulus", default="inf")
    p.set_defaults(handler=_cmd_freegroup)

    p = sub.add_parser("lattice", help="sampled checks of the integer-lattice tower")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(handler=_cmd_lattice)

    p = sub.add_parser("rb", help="Rota-Baxter operators and their braces")
    p.add_argument("action", choices=("check", "brace", "search", "free"))
    p.add_argument("--group")
    p.add_argument("--rb")
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(handler=_cmd_rb)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, ok = args.handler(args)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, systems.BraceSystemGraph):
        text = emit(result, args.format)
    else:
        if args.format == "dot":
            print("error: dot output is only available for system graphs", file=sys.stderr)
            return 2
        payload = {"config": _config_echo(args), "command": args.command}
        payload.update(result)
        text = emit(payload, "json")
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
