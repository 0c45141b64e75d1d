"""Command-line front end with stable JSON input/output.

Exit codes: 0 success (for ``halts``: the configuration stabilizes),
2 invalid input, 3 diverges, 4 undecided within the step cap.  Counts that
can exceed 64 bits (tree counts, group orders, odometers) are serialized as
decimal strings; identical inputs and flags produce byte-identical output.

The step cap for ``halts`` defaults to the COEUL_MAX_STEPS environment
variable when set.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import chipfiring, invariants, sandpile
from .errors import CoeulerianError
from .graphs import from_adjacency
from .lattice import ZeroSumLatticeBasis, laplacian_from_lattice, reduce_rank_to_halting

FORMAT = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIVERGES = 3
EXIT_UNKNOWN = 4


class InputDocumentError(CoeulerianError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _strs(values):
    return [str(v) for v in values]


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputDocumentError(f"{path}: {exc}") from exc


def _load_graph(path):
    doc = _load_json(path)
    if not isinstance(doc, dict) or "adj" not in doc:
        raise InputDocumentError(f"{path}: expected a graph document with 'adj'")
    adj = doc["adj"]
    if "n" in doc and doc["n"] != len(adj):
        raise InputDocumentError(f"{path}: 'n' does not match the adjacency matrix")
    return from_adjacency(adj)


def _load_chips(path, g):
    doc = _load_json(path)
    if not isinstance(doc, dict) or "chips" not in doc:
        raise InputDocumentError(f"{path}: expected a config document with 'chips'")
    chips = doc["chips"]
    if len(chips) != g.n or not all(isinstance(c, int) for c in chips):
        raise InputDocumentError(f"{path}: 'chips' must be {g.n} integers")
    return chips


def _load_sandpile(path, g, sink):
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise InputDocumentError(f"{path}: expected a config document")
    if "sand" in doc:
        if sink is None:
            sink = doc.get("sink")
        if sink is None:
            raise InputDocumentError(f"{path}: sandpile document needs a sink")
        sand = doc["sand"]
        if len(sand) != g.n - 1:
            raise InputDocumentError(f"{path}: 'sand' must be {g.n - 1} integers")
        return sink, sand
    if "chips" in doc:
        if sink is None:
            raise InputDocumentError("--sink is required for a total configuration")
        chips = _load_chips(path, g)
        return sink, chipfiring.restrict_to_nonsink(chips, sink)
    raise InputDocumentError(f"{path}: expected 'sand' or 'chips'")


def _load_lattice(path):
    doc = _load_json(path)
    if not isinstance(doc, dict) or "basis" not in doc:
        raise InputDocumentError(f"{path}: expected a lattice document with 'basis'")
    basis = doc["basis"]
    if "n" in doc and doc["n"] != len(basis):
        raise InputDocumentError(f"{path}: 'n' does not match the basis")
    return ZeroSumLatticeBasis(basis)


def _graph_document(g):
    return {"format": FORMAT, "n": g.n, "adj": [list(row) for row in g.adj]}


def cmd_classify(args, out):
    g = _load_graph(args.graph)
    inv = invariants.compute_invariants(g)
    out.write(
        _dump(
            {
                "format": FORMAT,
                "kappa": _strs(inv.kappa),
                "pham_index": str(inv.pham_index),
                "period": _strs(inv.period),
                "cokernel_order": str(inv.cokernel_order),
                "eulerian": inv.is_eulerian,
                "coeulerian": inv.is_coeulerian,
                "cactus": inv.is_cactus,
            }
        )
    )
    return EXIT_OK


def cmd_halts(args, out):
    g = _load_graph(args.graph)
    sigma = _load_chips(args.config, g)
    if args.fast_if_coeulerian and invariants.is_coeulerian(g) and min(sigma) >= 0:
        halts = chipfiring.decide_halting_coeulerian(g, sigma)
        if halts:
            out.write(_dump({"format": FORMAT, "status": "halts", "certificate": None}))
            return EXIT_OK
        out.write(_dump({"format": FORMAT, "status": "diverges", "witness": None}))
        return EXIT_DIVERGES

    step_cap = args.max_steps
    if step_cap is None and os.environ.get("COEUL_MAX_STEPS"):
        step_cap = int(os.environ["COEUL_MAX_STEPS"])
    trace_fh = open(args.trace, "w", encoding="utf-8") if args.trace else None
    try:
        on_fire = None
        if trace_fh is not None:
            def on_fire(step, vertex, config):
                trace_fh.write(
                    _dump({"step": step, "vertex": vertex, "config": list(config)})
                )
        verdict = chipfiring.decide_halting(g, sigma, step_cap=step_cap, on_fire=on_fire)
    finally:
        if trace_fh is not None:
            trace_fh.close()
    doc = {"format": FORMAT, "status": verdict.status, "steps": verdict.steps}
    if verdict.status == chipfiring.HALTS:
        doc["certificate"] = _strs(verdict.certificate)
        out.write(_dump(doc))
        return EXIT_OK
    if verdict.status == chipfiring.DIVERGES:
        doc["witness"] = _strs(verdict.witness)
        doc["period"] = _strs(invariants.period_vector(g))
        out.write(_dump(doc))
        return EXIT_DIVERGES
    out.write(_dump(doc))
    return EXIT_UNKNOWN


def cmd_stabilize(args, out):
    g = _load_graph(args.graph)
    sink, eta = _load_sandpile(args.config, g, args.sink)
    stable, odometer = chipfiring.stabilize_with_sink(g, sink, eta)
    out.write(
        _dump(
            {
                "format": FORMAT,
                "stable": stable,
                "odometer": _strs(odometer),
                "grains_to_sink": str(sum(eta) - sum(stable)),
            }
        )
    )
    return EXIT_OK


def cmd_group(args, out):
    g = _load_graph(args.graph)
    desc = sandpile.group_structure(g, args.sink)
    out.write(
        _dump(
            {
                "format": FORMAT,
                "order": str(desc.order),
                "invariant_factors": _strs(desc.invariant_factors),
                "beta": list(desc.beta),
                "order_of_beta": str(desc.order_of_beta),
                "identity": sandpile.identity(g, args.sink),
                "gamma_order": str(sandpile.gamma_order(g, args.sink)),
                "coset_count": str(sandpile.coset_count(g, args.sink)),
            }
        )
    )
    return EXIT_OK


def _trace_document(trace):
    return {
        "a": [list(r) for r in trace.a],
        "h": [list(r) for r in trace.h],
        "d": str(trace.d),
        "k": _strs(trace.k),
        "b": [list(r) for r in trace.b],
        "delta": [list(r) for r in trace.delta],
    }


def cmd_lattice2graph(args, out):
    lat = _load_lattice(args.lattice)
    g, trace = laplacian_from_lattice(lat)
    out.write(
        _dump(
            {
                "format": FORMAT,
                "graph": _graph_document(g),
                "trace": _trace_document(trace),
            }
        )
    )
    return EXIT_OK


def cmd_reduce(args, out):
    lat = _load_lattice(args.lattice)
    doc = _load_json(args.sigma)
    if not isinstance(doc, dict) or "chips" not in doc or len(doc["chips"]) != lat.n:
        raise InputDocumentError(f"{args.sigma}: expected 'chips' of length {lat.n}")
    g, config = reduce_rank_to_halting(lat, doc["chips"])
    out.write(
        _dump(
            {
                "format": FORMAT,
                "graph": _graph_document(g),
                "config": {"format": FORMAT, "chips": config},
            }
        )
    )
    return EXIT_OK


def random_graph_adjacency(n, max_multiplicity, seed):
    """Seeded random strongly connected adjacency matrix: random
    multiplicities plus a random Hamiltonian cycle."""
    if n < 1 or max_multiplicity < 1:
        raise InputDocumentError("n and max_multiplicity must be >= 1")
    rng = random.Random(seed)
    adj = [[0] * n for _ in range(n)]
    for v in range(n):
        for w in range(n):
            if rng.random() < 0.5:
                adj[v][w] = rng.randint(1, max_multiplicity)
    perm = list(range(n))
    rng.shuffle(perm)
    for i, v in enumerate(perm):
        w = perm[(i + 1) % n]
        if adj[v][w] == 0:
            adj[v][w] = 1
    return adj


def cmd_random_graph(args, out):
    adj = random_graph_adjacency(args.n, args.max_multiplicity, args.seed)
    g = from_adjacency(adj)
    out.write(_dump(_graph_document(g)))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coeulerian",
        description="Chip-firing halting, sandpile groups, and Laplacian lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="tree counts, Pham index, classification")
    p.add_argument("graph")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("halts", help="decide whether a configuration stabilizes")
    p.add_argument("graph")
    p.add_argument("config")
    p.add_argument("--fast-if-coeulerian", action="store_true")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--trace", default=None, metavar="FILE")
    p.set_defaults(func=cmd_halts)

    p = sub.add_parser("stabilize", help="sink-stabilize a sandpile")
    p.add_argument("graph")
    p.add_argument("config")
    p.add_argument("--sink", type=int, default=None)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("group", help="sandpile group structure for a sink")
    p.add_argument("graph")
    p.add_argument("--sink", type=int, required=True)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("lattice2graph", help="Laplacian realizing a zero-sum lattice")
    p.add_argument("lattice")
    p.set_defaults(func=cmd_lattice2graph)

    p = sub.add_parser("reduce", help="nonnegative-rank to halting reduction")
    p.add_argument("lattice")
    p.add_argument("sigma")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("random-graph", help="seeded random strongly connected graph")
    p.add_argument("n", type=int)
    p.add_argument("max_multiplicity", type=int)
    p.add_argument("seed", type=int)
    p.set_defaults(func=cmd_random_graph)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except CoeulerianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
