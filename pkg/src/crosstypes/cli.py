"""Command-line interface: solve, verify, classify, decompose, gen-hard, oracle, draw.

Exit codes: 0 YES / pass, 1 NO / fail, 2 usage or input error, 3 resource exhausted.
Reports go to stdout as tab-separated key/value lines, or as JSON with --json.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chords import chord_description_of, validate_chord_description
from .crossings import (
    classify_crossing,
    detect_b_configs,
    detect_w_configs,
    drawing_from_json,
    drawing_to_dict,
    drawing_to_json,
    format_type_set,
    parse_type_set,
    verify_drawing,
)
from .decomposition import bc_tree, is_internally_3connected, skeleton_plus, spr_tree
from .errors import BudgetExceeded, CrossTypesError, TooLarge
from .graph import format_edge_list, load_graph, norm_edge, parse_vertex
from .hardness import (
    ThreePartitionInstance,
    build_hard_instance,
    build_witness_drawing,
    instance_path_decomposition,
    solve_3partition,
    validate_path_decomposition,
)
from .render import emit_svg
from .solver import (
    NO,
    YES,
    oracle_drawing,
    oracle_enumerate,
    oracle_geom,
    oracle_geom_drawing,
    solve,
    solve_geom,
    tractable_pieces,
)

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _pair_text(p) -> str:
    (a, b), (c, d) = p
    return f"{a}-{b} x {c}-{d}"


def _emit(args, report: dict, order: list[str]) -> None:
    if args.json:
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = []
        for k in order:
            v = report.get(k)
            if isinstance(v, list):
                for item in v:
                    lines.append(f"{k}\t{item if not isinstance(item, (list, dict)) else json.dumps(item)}")
            elif v is not None:
                lines.append(f"{k}\t{str(v).lower() if isinstance(v, bool) else v}")
        text = "\n".join(lines) + "\n"
    if getattr(args, "report", None):
        Path(args.report).write_text(text)
    sys.stdout.write(text)


def _write_drawing(d, args) -> None:
    if getattr(args, "witness", None):
        Path(args.witness).write_text(drawing_to_json(d))
    if getattr(args, "svg", None):
        emit_svg(d, args.svg)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    g = load_graph(args.input, args.format)
    s = parse_type_set(args.types)
    outer = parse_vertex(args.outer) if args.outer is not None else None
    if outer is not None and not args.geometric:
        raise UsageError("--outer needs --geometric")
    if outer is not None and outer not in g:
        raise UsageError(f"outer vertex {outer!r} is not in the graph")
    if args.oracle:
        if args.geometric:
            dec = oracle_geom(g, outer, s)
            d = oracle_geom_drawing(g, outer, s) if dec == YES else None
        else:
            d = oracle_drawing(g, s)
            dec = YES if d is not None else NO
        method, pieces = "oracle", []
    else:
        if args.geometric:
            res = solve_geom(g, s, args.budget, outer=outer)
        else:
            res = solve(g, s, args.budget, parallel=args.parallel)
        dec, d, method, pieces = res.decision, res.witness, res.method, res.pieces
    report = {
        "verb": "solve",
        "decision": dec,
        "types": format_type_set(s),
        "geometric": bool(args.geometric),
        "outer": outer,
        "method": method,
        "vertices": g.n,
        "edges": g.m,
        "crossings": d.crossing_count() if d is not None else None,
        "pair": [_pair_text(p) for p in d.pairs] if d is not None else [],
        "piece": [f"{label}: {len(ps)} pairs" for label, ps in pieces],
    }
    if d is not None:
        _write_drawing(d, args)
    _emit(args, report, ["verb", "decision", "types", "geometric", "outer", "method", "vertices", "edges", "crossings", "pair", "piece"])
    return EXIT_YES if dec == YES else EXIT_NO


def cmd_oracle(args) -> int:
    g = load_graph(args.input, args.format)
    s = parse_type_set(args.types)
    outer = parse_vertex(args.outer) if args.outer is not None else None
    if outer is not None and not args.geometric:
        raise UsageError("--outer needs --geometric")
    dec = oracle_geom(g, outer, s, args.guard) if args.geometric else oracle_enumerate(g, s, args.guard)
    report = {"verb": "oracle", "decision": dec, "types": format_type_set(s), "geometric": bool(args.geometric), "outer": outer}
    _emit(args, report, ["verb", "decision", "types", "geometric", "outer"])
    return EXIT_YES if dec == YES else EXIT_NO


def cmd_verify(args) -> int:
    d = drawing_from_json(Path(args.drawing).read_text())
    s = parse_type_set(args.types)
    rep = verify_drawing(d, s)
    ok = rep.ok
    b = w = []
    if args.geometric:
        b = detect_b_configs(d)
        w = detect_w_configs(d)
        ok = ok and not b and not w
    report = {
        "verb": "verify",
        "ok": ok,
        "types": format_type_set(s),
        "one_planar": rep.one_planar,
        "crossings": len([c for c in rep.crossings if c["realized"]]),
        "crossing": [f"{c['cross_id']}\t{c['type']}\t{'realized' if c['realized'] else 'unrealized'}" for c in rep.crossings],
        "violation": list(rep.violations),
        "b_config": [f"s={c.s} s'={c.s2} at {c.crossing}" for c in b],
        "w_config": [f"s={c.s} s'={c.s2} at {c.x1},{c.x2}" for c in w],
    }
    if args.json:
        report["crossing"] = rep.crossings
    _emit(args, report, ["verb", "ok", "types", "one_planar", "crossings", "crossing", "violation", "b_config", "w_config"])
    return EXIT_YES if ok else EXIT_NO


def cmd_classify(args) -> int:
    g = load_graph(args.input, args.format)
    a, b, c, d = (parse_vertex(x) for x in args.pair)
    e, f = norm_edge(a, b), norm_edge(c, d)
    for x in (e, f):
        if not g.has_edge(*x):
            raise UsageError(f"{x[0]}-{x[1]} is not an edge of the graph")
    if set(e) & set(f):
        raise UsageError("the two edges share an endpoint")
    t = classify_crossing(g, e, f)
    _emit(args, {"verb": "classify", "pair": [_pair_text((e, f))], "type": t.value}, ["verb", "pair", "type"])
    return EXIT_YES


def cmd_decompose(args) -> int:
    g = load_graph(args.input, args.format)
    out = Path(args.out_dir) if args.out_dir else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    report: dict = {"verb": "decompose", "vertices": g.n, "edges": g.m, "block": [], "spr_node": [], "skeleton": [], "chords": []}
    for ci, comp in enumerate(g.components()):
        sub = g.subgraph(comp)
        if sub.n < 2:
            continue
        bc = bc_tree(sub)
        for bi, block in enumerate(bc.blocks):
            tag = f"c{ci}:b{bi}"
            report["block"].append(f"{tag}\t{block.n}\t{block.m}")
            if out:
                (out / f"c{ci}-b{bi}.el").write_text(format_edge_list(block))
            if block.n < 3:
                continue
            t = spr_tree(block)
            for node in t.nodes:
                nb = ",".join(str(x) for x in t.neighbors(node.id))
                report["spr_node"].append(f"{tag}:n{node.id}\t{node.kind}\t{len(node.vertices)}\t{nb}")
                sp = skeleton_plus(t, node.id, block)
                report["skeleton"].append(f"{tag}:n{node.id}\t{sp.graph.n}\t{sp.graph.m}\t{'i3c' if is_internally_3connected(sp.graph) else '-'}")
                if out:
                    stem = f"c{ci}-b{bi}-n{node.id}"
                    (out / f"{stem}.el").write_text(format_edge_list(sp.graph))
                    prov = "".join(f"{e[0]} {e[1]}\t{sp.provenance[e]}\n" for e in sp.graph.edges)
                    (out / f"{stem}.prov").write_text(prov)
    if args.types:
        s = parse_type_set(args.types)
        res = solve(g, s, args.budget)
        report["decision"] = res.decision
        if res.yes:
            graphs = dict(tractable_pieces(g))
            for label, ps in res.pieces:
                pg = graphs.get(label)
                if pg is None:
                    continue
                psi = chord_description_of(pg, ps)
                ok = validate_chord_description(pg, psi, s)
                report["chords"].append(f"{label}\t{len(psi.entries)} entries\t{'valid' if ok else 'INVALID'}")
    _emit(args, report, ["verb", "vertices", "edges", "decision", "block", "spr_node", "skeleton", "chords"])
    return EXIT_YES


def cmd_gen_hard(args) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --sizes: {exc}") from exc
    inst = ThreePartitionInstance(sizes, args.bound)
    hi = build_hard_instance(inst, args.variant, bundle_width=args.bundle, parity_waiver=args.parity_waiver)
    Path(args.out).write_text(format_edge_list(hi.graph))
    if args.roles:
        Path(args.roles).write_text(hi.roles_tsv())
    pd = instance_path_decomposition(hi)
    check = validate_path_decomposition(hi.graph, pd)
    partition = None
    drawing = None
    if inst.m <= 6:
        partition = solve_3partition(inst)
    if partition is not None:
        drawing = build_witness_drawing(hi, partition)
        if args.svg:
            emit_svg(drawing, args.svg)
    if args.certificate:
        cert = {
            "instance": {"sizes": list(inst.sizes), "bound": inst.bound, "m": inst.m},
            "variant": hi.variant.value,
            "counts": hi.counts,
            "partition": [list(t) for t in partition] if partition else None,
            "partition_sizes": [[inst.sizes[i] for i in t] for t in partition] if partition else None,
            "witness": drawing_to_dict(drawing) if drawing is not None else None,
            "path_decomposition": {
                "width": check.width,
                "valid": check.ok,
                "bags": [sorted(map(str, b)) for b in pd.bags],
            },
        }
        Path(args.certificate).write_text(json.dumps(cert, indent=1) + "\n")
    report = {"verb": "gen-hard", **hi.counts, "variant": hi.variant.value, "satisfiable": None if inst.m > 6 else partition is not None, "pathwidth_bound": check.width}
    if drawing is not None:
        rep = verify_drawing(drawing, {hi.variant})
        report["witness_ok"] = rep.ok and not detect_b_configs(drawing) and not detect_w_configs(drawing)
        report["witness_crossings"] = drawing.crossing_count()
    order = ["verb", "variant", "vertices", "edges", "fences", "radian_fences", "divider_fences", "splitter_fences",
             "transmitter_rim", "collector_rim", "splitter_edges", "satisfiable", "witness_ok", "witness_crossings", "pathwidth_bound"]
    _emit(args, report, order)
    return EXIT_YES


def cmd_draw(args) -> int:
    d = drawing_from_json(Path(args.drawing).read_text())
    emit_svg(d, args.out)
    _emit(args, {"verb": "draw", "out": str(args.out), "vertices": d.host.n, "crossings": d.crossing_count()}, ["verb", "out", "vertices", "crossings"])
    return EXIT_YES


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crosstypes", description="Crossing-type restricted 1-planarity toolkit.")
    sub = p.add_subparsers(dest="verb", required=True)

    def graph_in(sp):
        sp.add_argument("--input", required=True, help="edge list or graph6 file")
        sp.add_argument("--format", choices=["auto", "edgelist", "graph6"], default="auto")

    def common(sp):
        sp.add_argument("--json", action="store_true", help="JSON report on stdout")
        sp.add_argument("--report", help="also write the report to this file")

    sp = sub.add_parser("solve", help="decide S-restricted (or geometric) 1-planarity")
    graph_in(sp)
    sp.add_argument("--types", required=True, help="comma set of full,almostfull,bowtie,arrow,chair,x")
    sp.add_argument("--geometric", action="store_true")
    sp.add_argument("--outer", help="vertex required on the outer face (with --geometric)")
    sp.add_argument("--budget", type=int, help="search node budget")
    sp.add_argument("--witness", help="write the witness drawing JSON here")
    sp.add_argument("--svg", help="render the witness drawing to this SVG file")
    sp.add_argument("--oracle", action="store_true", help="force the brute-force oracle")
    sp.add_argument("--parallel", action="store_true", help="solve pieces in worker processes")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oracle", help="brute-force decision (small graphs)")
    graph_in(sp)
    sp.add_argument("--types", required=True)
    sp.add_argument("--geometric", action="store_true")
    sp.add_argument("--outer")
    sp.add_argument("--guard", type=int, default=16, help="maximum edge count")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", help="check a drawing JSON against a type set")
    sp.add_argument("--drawing", required=True)
    sp.add_argument("--types", required=True)
    sp.add_argument("--geometric", action="store_true", help="also require no B- or W-configuration")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="crossing type of one edge pair")
    graph_in(sp)
    sp.add_argument("--pair", nargs=4, required=True, metavar=("A", "B", "C", "D"), help="edges A-B and C-D")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("decompose", help="BC-tree, SPR-trees and skeleton+ graphs")
    graph_in(sp)
    sp.add_argument("--out-dir", help="write skeleton+ edge lists and provenance sidecars here")
    sp.add_argument("--types", help="also solve and report chord descriptions of the pieces")
    sp.add_argument("--budget", type=int)
    common(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("gen-hard", help="3-Partition reduction graph with certificate")
    sp.add_argument("--sizes", required=True, help="comma list of element sizes")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--variant", choices=["arrow", "chair", "x"], required=True)
    sp.add_argument("--out", required=True, help="edge list output")
    sp.add_argument("--roles", help="roles TSV output")
    sp.add_argument("--certificate", help="certificate JSON output")
    sp.add_argument("--svg", help="render the witness drawing to this SVG file")
    sp.add_argument("--bundle", type=int, default=12, help="paths per fence bundle")
    sp.add_argument("--parity-waiver", action="store_true", help="accept odd m or B")
    common(sp)
    sp.set_defaults(func=cmd_gen_hard)

    sp = sub.add_parser("draw", help="render a drawing JSON to SVG")
    sp.add_argument("--drawing", required=True)
    sp.add_argument("--out", required=True)
    common(sp)
    sp.set_defaults(func=cmd_draw)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (BudgetExceeded, TooLarge) as exc:
        print(f"crosstypes: resource exhausted: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, CrossTypesError, OSError, ValueError) as exc:
        print(f"crosstypes: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
