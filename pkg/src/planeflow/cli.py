"""Command line front end: ``planeflow <command> ...``.

Exit status is 0 on success, 1 when the input is rejected (parse errors,
violated preconditions, bad arguments) and 2 when an internal check fails,
including a disagreement with the oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .bench import bench
from .errors import PlaneFlowError
from .generators import FAMILIES, generate_instance
from .oracle import ComponentLP, dinic_max_flow
from .outerplanarity import edge_outerplanarity, vertex_outerplanarity
from .pfn import format_pfn, read_pfn
from .preprocess import normalize, prepare_extended
from .reassembling import alpha_measure, build_reassembling
from .transform import to_cubic, transform_network
from .typings import PipelineStats, flow_intervals, max_flow_value


class _Rejection(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems are rejections, not crashes
        self.print_usage(sys.stderr)
        raise _Rejection(f"{self.prog}: {message}")


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    (out or sys.stdout).write(text + "\n")


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    doc = read_pfn(args.file)
    G = doc.G
    _emit({
        "valid": True, "n": G.n, "m": G.m, "faces": len(G.faces),
        "sources": list(doc.sources), "sinks": list(doc.sinks),
        "cubic": G.is_cubic(), "two_edge_cycles": len(G.two_edge_cycles()),
    })
    return 0


def cmd_preprocess(args) -> int:
    N = read_pfn(args.file).flow_network()
    nets, report = normalize(N)
    segs = []
    for seg in report.segments:
        if seg.network is None:
            segs.append({"value": str(seg.value)})
        else:
            segs.append({"n": seg.network.G.n, "m": seg.network.G.m, "s": seg.network.s, "t": seg.network.t})
    _emit({"segments": segs, "combine": "min", "actions": [a.as_json() for a in report.actions]})
    if args.output:
        if len(nets) != 1:
            raise _Rejection(f"--output needs exactly one network segment, got {len(nets)}")
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(format_pfn(nets[0]))
    return 0


def cmd_transform(args) -> int:
    N = prepare_extended(read_pfn(args.file).extended())
    T = transform_network(N)
    G, H = N.G, T.graph
    k0, k1 = edge_outerplanarity(G).k, edge_outerplanarity(H).k
    _emit({
        "n": G.n, "m": G.m, "n_hat": H.n, "m_hat": H.m,
        "k": k0, "k_hat": k1, "cubic": H.is_cubic(),
        "two_edge_cycles": len(H.two_edge_cycles()), "expanded": len(T.traces), "big": str(T.big),
    }, sys.stderr if args.output == "-" else None)
    if args.output:
        _write_or_print(format_pfn(T.network()), None if args.output == "-" else args.output)
    return 0


def cmd_outerplanarity(args) -> int:
    G = read_pfn(args.file).G
    L = edge_outerplanarity(G)
    _emit({"k": L.k, "k_V": vertex_outerplanarity(G), "block_sizes": L.sizes()})
    return 0


def cmd_reassemble(args) -> int:
    G = read_pfn(args.file).G
    expanded = False
    if not G.is_cubic() or G.two_edge_cycles():
        G, _ = to_cubic(G)
        expanded = True
    L = edge_outerplanarity(G)
    B = build_reassembling(G, L)
    am = alpha_measure(G, B)
    _emit({
        "n": G.n, "expanded": expanded, "k": L.k, "alpha": am.alpha,
        "bound": 2 * L.k, "within_bound": am.alpha <= 2 * L.k, "witness_node": am.node, "nodes": B.size,
    })
    if args.tree:
        sys.stdout.write(B.to_text() + "\n")
    return 0


def _pipeline_report(stats: PipelineStats) -> dict:
    return {"n": stats.n, "m": stats.m, "k": stats.k, "k_V": stats.k_V, "alpha": stats.alpha}


def cmd_maxflow(args) -> int:
    N = read_pfn(args.file).flow_network()
    stats = PipelineStats()
    value = max_flow_value(N, stats)
    rep = _pipeline_report(stats)
    rep["value"] = str(value)
    rep["segments"] = stats.segments
    rep["timings_us"] = stats.timings
    rep["actions"] = stats.actions
    status = 0
    if args.verify:
        ref = dinic_max_flow(N).value
        rep["oracle_value"] = str(ref)
        rep["agreement"] = ref == value
        status = 0 if ref == value else 2
    _emit(rep)
    return status


def cmd_extended(args) -> int:
    N = read_pfn(args.file).extended()
    stats = PipelineStats()
    tau = flow_intervals(N, stats)
    rep = _pipeline_report(stats)
    lo, hi = tau.interval(N.sources)
    rep["value"] = str(hi)
    rep["min_value"] = str(lo)
    rep["intervals"] = tau.as_json()
    rep["timings_us"] = stats.timings
    status = 0
    if args.verify:
        lp = ComponentLP(N, range(N.G.n))
        diffs = []
        for A, a, b in zip(tau.subsets(), tau.lo, tau.hi):
            ref = lp.interval([("t", v) for v in A])
            if ref != (a, b):
                diffs.append({"subset": list(A), "pipeline": [str(a), str(b)], "oracle": [str(x) for x in ref]})
        rep["agreement"] = not diffs
        rep["diffs"] = diffs
        status = 0 if not diffs else 2
    _emit(rep)
    return status


def cmd_oracle_check(args) -> int:
    rows = []
    for path in args.files:
        N = read_pfn(path).flow_network()
        got = max_flow_value(N)
        ref = dinic_max_flow(N).value
        rows.append({"file": path, "pipeline": str(got), "oracle": str(ref), "agree": got == ref})
    bad = [r for r in rows if not r["agree"]]
    _emit({"checked": len(rows), "disagreements": len(bad), "rows": rows})
    return 0 if not bad else 2


def cmd_gen(args) -> int:
    N = generate_instance(args.family, args.k, args.ell, args.seed)
    _write_or_print(format_pfn(N), args.output)
    return 0


def cmd_bench(args) -> int:
    table = bench(args.family, args.k, args.n, reps=args.reps, seed=args.seed)
    if args.json:
        _emit(table.as_json())
    else:
        sys.stdout.write(table.format() + "\n")
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planeflow", description="Exact max-flow values in plane networks of bounded edge-outerplanarity.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "parse and check a .pfn file").add_argument("file")
    sp = add("preprocess", cmd_preprocess, "bring a network into normal form")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", help="write the single normalized network here")
    sp = add("transform", cmd_transform, "cubic, two-edge-cycle-free rewrite")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", help="write the transformed network ('-' for stdout)")
    add("outerplanarity", cmd_outerplanarity, "edge and vertex outerplanarity").add_argument("file")
    sp = add("reassemble", cmd_reassemble, "build a reassembling tree and measure alpha")
    sp.add_argument("file")
    sp.add_argument("--tree", action="store_true", help="print the tree as indented text")
    sp = add("maxflow", cmd_maxflow, "maximum flow value")
    sp.add_argument("file")
    sp.add_argument("--verify", action="store_true", help="compare against Dinic")
    sp = add("extended", cmd_extended, "interval typing of a multi-terminal network")
    sp.add_argument("file")
    sp.add_argument("--verify", action="store_true", help="compare against the LP oracle")
    sp = add("oracle-check", cmd_oracle_check, "pipeline versus oracle on several files")
    sp.add_argument("files", nargs="+")
    sp = add("gen", cmd_gen, "generate an instance")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--ell", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp = add("bench", cmd_bench, "scaling benchmark")
    sp.add_argument("--family", choices=FAMILIES, default="nested-prisms")
    sp.add_argument("--k", type=int, default=2, help="target edge-outerplanarity")
    sp.add_argument("--n", type=int, nargs="*", default=[1000, 3000, 10000])
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _Rejection as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PlaneFlowError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
