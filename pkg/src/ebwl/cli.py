"""``ebwl`` command line: JSON on stdout (or ``--output``), summaries on stderr."""

from __future__ import annotations

import argparse
import json
import sys

from . import bench, ebgnn, graph, homcount, refinement, triangles


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_seeds(text: str) -> list[int]:
    # a bare count means seeds 0..S-1
    if "," not in text:
        try:
            return list(range(int(text)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed spec {text!r}")
    return _parse_ints(text)


def cmd_gen(args) -> str:
    fam = args.family
    if fam == "circulant":
        if args.n is None or args.skips is None:
            raise graph.GraphError(graph.E_ARGS, "circulant needs --n and --skips")
        g = graph.circulant(args.n, args.skips)
    elif fam == "fig2":
        G, H = graph.figure2_pair()
        g = {"G": G, "H": H}[args.which or "G"]
    elif fam == "fig3":
        g1, g2 = graph.figure3_pair()
        g = {"G1": g1, "G2": g2}[args.which or "G1"]
    else:
        if args.n is None or args.p is None:
            raise graph.GraphError(graph.E_ARGS, "random needs --n and --p")
        g = graph.random_graph(args.n, args.p, args.seed)
    print(f"generated {fam}: n={g.n} m={g.m}", file=sys.stderr)
    return graph.format_edge_list(g)


def cmd_triangles(args) -> dict:
    return triangles.triangle_stats(graph.read_edge_list(args.file))


def cmd_refine(args) -> dict:
    g = graph.read_edge_list(args.file)
    trace = refinement.refine(g, args.test, max_rounds=args.max_rounds)
    return trace.to_json()


def cmd_distinguish(args) -> dict:
    g1 = graph.read_edge_list(args.file1)
    g2 = graph.read_edge_list(args.file2)
    v = refinement.distinguish(g1, g2, args.test, max_rounds=args.max_rounds)
    return {"distinguished": v.distinguished, "separating_round": v.separating_round}


def cmd_homcount(args) -> dict:
    p = graph.read_edge_list(args.pattern)
    t = graph.read_edge_list(args.target)
    return homcount.hom_count(p, t, args.method)


def cmd_gnn(args) -> dict:
    g1 = graph.read_edge_list(args.file1)
    g2 = graph.read_edge_list(args.file2)
    res = ebgnn.gnn_distinguish(g1, g2, args.dim, args.layers, args.seeds, args.tol)
    return {"per_seed": res, "any": any(res)}


def cmd_bench(args) -> dict:
    return bench.run_bench(args.sizes, args.degree, args.seed, args.repeats)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ebwl", description=__doc__)
    top.add_argument("--output", default="-", help="output path (default stdout)")
    top.add_argument("--threads", type=int, default=0,
                     help="worker threads, 0 = auto (engines currently run single-threaded)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("family", choices=["circulant", "fig2", "fig3", "random"])
    p.add_argument("--n", type=int)
    p.add_argument("--skips", type=_parse_ints)
    p.add_argument("--which", choices=["G", "H", "G1", "G2"])
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("triangles", help="triangle count, degeneracy, per-edge histogram")
    p.add_argument("file")
    p.set_defaults(fn=cmd_triangles)

    p = sub.add_parser("refine", help="run one refinement test and print its trace")
    p.add_argument("--test", choices=refinement.TESTS, required=True)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("file")
    p.set_defaults(fn=cmd_refine)

    p = sub.add_parser("distinguish", help="shared-palette verdict for two graphs")
    p.add_argument("--test", choices=refinement.TESTS, required=True)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=cmd_distinguish)

    p = sub.add_parser("homcount", help="homomorphism count pattern -> target")
    p.add_argument("pattern")
    p.add_argument("target")
    p.add_argument("--method", choices=["brute", "peo", "auto"], default="auto")
    p.set_defaults(fn=cmd_homcount)

    p = sub.add_parser("gnn-distinguish", help="random-weight EB-GNN comparison")
    p.add_argument("--dim", type=int, default=16)
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--seeds", type=_parse_seeds, default=list(range(10)),
                   help="seed count S (seeds 0..S-1) or comma list")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(fn=cmd_gnn)

    p = sub.add_parser("bench", help="time triangle preprocessing and EB-1WL rounds")
    p.add_argument("--sizes", type=_parse_ints, default=[10000, 20000, 40000, 80000],
                   help="target edge counts, ascending")
    p.add_argument("--degree", type=float, default=8.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(fn=cmd_bench)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.fn(args)
    except (graph.GraphError, refinement.DenseLimitError, homcount.PatternTooLarge,
            ValueError, OSError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        print(json.dumps({"error": code, "message": str(exc)}), file=sys.stderr)
        return 1
    text = result if isinstance(result, str) else json.dumps(result, sort_keys=True) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
