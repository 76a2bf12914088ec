"""Command line interface.

Results go to stdout as canonical JSON (sorted keys); diagnostics go to
stderr.  Exit codes: 0 success, 1 a check or consistency verification failed,
2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .digraphs import Digraph, VertexPermutation, automorphisms, parse_graph_shorthand
from .embeddings import (h_map, k0_map, multiplicity, recover_cycle_multiplicities,
                         spec_from_json_dict)
from .homology import homology, reduced_homology
from .intertwiner import StationarySystem, classify_family, decide_isomorphic
from .limits import limit_homology, stationary_limit
from .linalg import IntMatrix, det
from .uniqueness import decide_uniqueness, homology_range
from .verification import run_all

log = logging.getLogger("cliquehom")


class InputError(ValueError):
    """Malformed command input (exit code 2)."""


def _load_json_arg(text: str):
    """Parse an argument as inline JSON, else as a path to a JSON file."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    path = Path(text)
    if path.is_file():
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{text}: {exc}") from exc
    raise InputError(f"{text!r} is neither inline JSON nor a readable JSON file")


def _parse_graph(text: str) -> Digraph:
    try:
        return parse_graph_shorthand(text)
    except ValueError:
        pass
    data = _load_json_arg(text)
    try:
        return Digraph.from_json_dict(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad graph: {exc}") from exc


def _parse_matrix(text: str) -> IntMatrix:
    data = _load_json_arg(text)
    if isinstance(data, dict):
        data = data.get("matrix", data.get("entries"))
    try:
        return IntMatrix.from_rows(data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")


def _group_payload(group) -> dict:
    return {"group": group.render(), "rank": group.rank,
            "torsion": list(group.torsion)}


def _cmd_homology(args) -> int:
    from .cliques import clique_complex
    g = _parse_graph(args.graph)
    kx = clique_complex(g, max_dim=args.max_dim)
    compute = reduced_homology if args.reduced else homology
    payload = {"graph_vertices": g.vertex_count,
               "simplex_counts": [kx.size(t) for t in range(kx.max_dim + 1)],
               "degrees": {}}
    degrees = args.degree if args.degree else list(range(kx.max_dim))
    for t in degrees:
        try:
            payload["degrees"][str(t)] = _group_payload(compute(kx, t).group)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    _emit(payload)
    return 0


def _parse_permutation_arg(g: Digraph, text: str) -> VertexPermutation:
    if text.startswith(("rot:", "refl:")):
        from .digraphs import cycle_digraph, named_cycle_automorphism
        if g.vertex_count % 2 or g != cycle_digraph(g.vertex_count // 2):
            raise InputError("named automorphisms only apply to cycle digraphs")
        try:
            return named_cycle_automorphism(g.vertex_count // 2, text)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    data = _load_json_arg(text)
    try:
        return VertexPermutation(tuple(int(v) for v in data))
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad permutation: {exc}") from exc


def _cmd_induced_map(args) -> int:
    from .cliques import chain_map, clique_complex
    from .homology import induced_map
    g = _parse_graph(args.graph)
    perm = _parse_permutation_arg(g, args.permutation)
    kx = clique_complex(g)
    try:
        morphism = induced_map(chain_map(perm, kx, kx), args.degree)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"degree": args.degree,
               "matrix": [list(r) for r in morphism.matrix.entries],
               "source": _group_payload(morphism.source),
               "target": _group_payload(morphism.target)}
    if morphism.matrix.is_square():
        payload["determinant"] = det(morphism.matrix)
    _emit(payload)
    return 0


def _family(g: Digraph, name: str):
    if name == "all":
        return automorphisms(g)
    if name == "rotations":
        from .digraphs import rotations
        return rotations(g)
    if name == "cycle":
        from .digraphs import cycle_automorphism_family, cycle_digraph
        if g.vertex_count % 2 or g != cycle_digraph(g.vertex_count // 2):
            raise InputError("the cycle family needs a cycle digraph")
        return cycle_automorphism_family(g.vertex_count // 2)
    raise InputError(f"unknown family {name!r}")


def _cmd_uniqueness(args) -> int:
    g = _parse_graph(args.graph)
    thetas = _family(g, args.family)
    degrees = tuple(args.degree) if args.degree else (1,)
    report = decide_uniqueness(g, thetas, degrees=degrees,
                               restrict_receiving=args.restrict_receiving)
    log.info("rank %d of %d unknowns", report.rank, report.unknowns)
    _emit(report.to_json_dict())
    return 0


def _cmd_homology_range(args) -> int:
    g = _parse_graph(args.graph)
    thetas = _family(g, args.family)
    target = _parse_matrix(args.k0)
    try:
        values = homology_range(g, thetas, target, degree=args.degree,
                                restrict_receiving=args.restrict_receiving)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit({"count": len(values),
           "values": [[list(r) for r in m.entries] for m in values]})
    return 0


def _cmd_recover(args) -> int:
    k0 = _parse_matrix(args.k0)
    h1 = _parse_matrix(args.h1)
    try:
        r = recover_cycle_multiplicities(k0, h1, args.m)
    except ValueError as exc:
        log.error("%s", exc)
        _emit({"recovered": False, "error": str(exc)})
        return 1
    _emit({"recovered": True, "multiplicities": list(r)})
    return 0


def _cmd_limit(args) -> int:
    if (args.step is None) == (args.spec is None):
        raise InputError("pass exactly one of --step or --spec")
    if args.step is not None:
        a = _parse_matrix(args.step)
        if not a.is_square():
            raise InputError("step matrix must be square")
        group = stationary_limit(a.rows, a)
    else:
        data = _load_json_arg(args.spec)
        try:
            spec = spec_from_json_dict(data)
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad embedding spec: {exc}") from exc
        try:
            group = limit_homology(spec, args.degree)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    _emit({"group": group.render(), "resolved": group.is_resolved})
    return 0


def _parse_system(text: str) -> StationarySystem:
    data = _load_json_arg(text)
    try:
        g = (parse_graph_shorthand(data["graph"]) if isinstance(data["graph"], str)
             else Digraph.from_json_dict(data["graph"]))
        pattern = IntMatrix.from_rows(data["pattern"])
        h1 = IntMatrix.from_rows(data["h1"])
        h0 = IntMatrix.from_rows(data["h0"])
        blocks = int(data.get("blocks", h1.rows))
        return StationarySystem(g, blocks, pattern, h1, h0)
    except InputError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad stationary system: {exc}") from exc


def _cmd_intertwine(args) -> int:
    sys_x = _parse_system(args.system_x)
    sys_y = _parse_system(args.system_y)
    try:
        decision = decide_isomorphic(sys_x, sys_y, depth=args.depth,
                                     max_exp=args.max_exp)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(decision.to_json_dict())
    return 0


def _cmd_classify(args) -> int:
    fam = classify_family(args.entries, symmetric_only=not args.all_matrices)
    _emit(fam.to_json_dict())
    return 0


def _cmd_verify(args) -> int:
    results = run_all(args.ids or None)
    if not results:
        raise InputError("no matching check ids")
    failed = 0
    for check, ok, details in results:
        status = "PASS" if ok else "FAIL"
        print(f"{check.ident} {status} {check.title}: {details}")
        if not ok:
            failed += 1
    log.info("%d of %d checks passed", len(results) - failed, len(results))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliquehom",
        description="Exact clique homology of digraph algebras: invariants, "
                    "recovery, limits, and intertwiner ladders.")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="homology groups of a clique complex")
    p.add_argument("graph", help="shorthand (cycle:4, cube, prod(a,b), susp(g,n)), "
                                 "inline JSON, or a JSON file")
    p.add_argument("-t", "--degree", type=int, action="append",
                   help="degree to compute (repeatable; default: all)")
    p.add_argument("--max-dim", type=int, default=3,
                   help="top simplex dimension to build (default 3)")
    p.add_argument("--reduced", action="store_true", help="reduced homology")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("induced-map", help="map induced on homology by a vertex map")
    p.add_argument("graph")
    p.add_argument("permutation", help="JSON image list, rot:j, or refl:j")
    p.add_argument("-t", "--degree", type=int, default=1)
    p.set_defaults(func=_cmd_induced_map)

    p = sub.add_parser("uniqueness",
                       help="rank test: do K0 and homology data pin down multiplicities?")
    p.add_argument("graph")
    p.add_argument("--family", default="all", choices=("all", "rotations", "cycle"))
    p.add_argument("-t", "--degree", type=int, action="append", default=None,
                   help="homology degrees to include (default: 1)")
    p.add_argument("--restrict-receiving", action="store_true",
                   help="restrict K0 data to receiving vertices")
    p.set_defaults(func=_cmd_uniqueness)

    p = sub.add_parser("homology-range",
                       help="attainable homology matrices over a fixed K0 block")
    p.add_argument("graph")
    p.add_argument("k0", help="target K0 block (inline JSON or file)")
    p.add_argument("--family", default="all", choices=("all", "rotations", "cycle"))
    p.add_argument("-t", "--degree", type=int, default=1)
    p.add_argument("--restrict-receiving", action="store_true")
    p.set_defaults(func=_cmd_homology_range)

    p = sub.add_parser("recover",
                       help="multiplicities of a cycle-digraph embedding from (K0, H1)")
    p.add_argument("m", type=int, help="half the cycle length")
    p.add_argument("k0")
    p.add_argument("h1")
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("limit", help="stationary limit of a step matrix or diagram")
    p.add_argument("--step", help="square integer step matrix")
    p.add_argument("--spec", help="embedding spec JSON (square block shape)")
    p.add_argument("-t", "--degree", type=int, default=1,
                   help="homology degree for --spec (default 1)")
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("intertwine",
                       help="decide isomorphism of two stationary systems")
    p.add_argument("system_x", help="JSON with graph, pattern, h1, h0")
    p.add_argument("system_y")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--max-exp", type=int, default=12)
    p.set_defaults(func=_cmd_intertwine)

    p = sub.add_parser("classify",
                       help="limit classes of 2x2 step matrices over an entry set")
    p.add_argument("entries", type=int, nargs="+")
    p.add_argument("--all-matrices", action="store_true",
                   help="all matrices over the entries, not only symmetric ones")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify-paper",
                       help="run the pinned acceptance checks, one line each")
    p.add_argument("ids", nargs="*", help="check ids to run (default: all)")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s",
                        level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except InputError as exc:
        log.error("%s", exc)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
