"""Command-line front end.

Every command reads one JSON envelope (``-`` for stdin) and writes JSON to
stdout.  Exit codes: 0 success, 1 domain failure, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Callable

from . import serial
from .bipart import (
    directed_embed,
    family_as_system,
    maximal_proper_two_stars,
    orientation_embed,
    recover,
    recover_sparse,
)
from .core import (
    classify,
    essential_core,
    is_essential,
    is_nested,
    is_regular,
    is_tree_set,
    regularization,
)
from .errors import NotInjectiveEmbedding, TreeSetError, UnsupportedConversion
from .generate import planted_nested_system, random_order_tree, random_stree, random_system, random_tree
from .graphdecomp import decomposition_from_treeset, extract_separations
from .orderbridge import (
    canonize,
    is_connected_order_tree,
    is_order_tree,
    order_tree_from_oriented,
    treeset_from_order_tree,
    verify_order_roundtrip,
)
from .serial import ParseError, plain
from .stree import (
    essentialize,
    is_redundant,
    is_star_family,
    is_tight,
    stree_from_treeset,
    treeset_from_stree,
)
from .stree import is_essential as stree_is_essential
from .treebridge import edge_tree_set, tree_from_treeset, verify_identity_isomorphism, verify_node_bijection

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


def _emit(data: Any) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _read_json(path: str) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc


def _load(path: str) -> tuple[str, Any]:
    return serial.parse_envelope(_read_json(path))


def _orientation(path: str | None) -> list[int]:
    if path is None:
        raise UnsupportedConversion("this conversion needs --orientation")
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("orientation")
    if not isinstance(data, list) or not all(isinstance(i, int) for i in data):
        raise ParseError("orientation file must hold a list of indices")
    return data


def _require(kind: str, obj, expected: tuple[str, ...], what: str):
    if kind not in expected:
        raise UnsupportedConversion(f"{what} is not defined for kind {kind!r}")
    return obj


# -- validate -----------------------------------------------------------------

ERROR_CHECKS = {
    "BadInvolution": "involution",
    "NotAPoset": "partial order",
    "InvolutionNotOrderReversing": "order-reversing involution",
    "InvalidTree": "simple connected tree",
    "InvalidFamily": "symmetric bipartition family",
    "InvalidDecomposition": "tree-decomposition axioms",
}


def _properties(kind: str, obj) -> dict:
    if kind == "system":
        return {
            "nested": is_nested(obj),
            "regular": is_regular(obj),
            "essential": is_essential(obj),
            "tree_set": is_tree_set(obj),
            "degenerate": sum(classify(obj).degenerate),
            "trivial": sum(classify(obj).trivial),
        }
    if kind == "order_tree":
        return {"connected": is_connected_order_tree(obj)}
    if kind == "bipartition_family":
        fam_sys = family_as_system(obj)
        return {"nested": is_nested(fam_sys), "tree_set": is_tree_set(fam_sys)}
    if kind == "stree":
        over_stars = is_star_family(obj.host, obj.images().values())
        return {
            "over_stars": over_stars,
            "irredundant": not is_redundant(obj),
            "tight": is_tight(obj),
            "essential": stree_is_essential(obj),
        }
    if kind == "tree":
        return {"nodes": len(obj.nodes)}
    return {}


def cmd_validate(args) -> int:
    data = _read_json(args.file)
    checks = []
    try:
        kind, obj = serial.parse_envelope(data)
    except ParseError:
        raise
    except TreeSetError as exc:
        name = type(exc).__name__
        checks.append({"check": ERROR_CHECKS.get(name, name), "passed": False, "detail": str(exc)})
        _emit({"kind": data.get("kind"), "valid": False, "checks": checks})
        return EXIT_DOMAIN
    checks.append({"check": "schema", "passed": True})
    for name in _construction_checks(kind):
        checks.append({"check": name, "passed": True})
    if kind == "order_tree":
        ok = is_order_tree(obj)
        checks.append({"check": "down-sets are chains", "passed": ok})
    valid = all(c["passed"] for c in checks)
    _emit({"kind": kind, "valid": valid, "checks": checks, "properties": _properties(kind, obj)})
    return EXIT_OK if valid else EXIT_DOMAIN


def _construction_checks(kind: str) -> list[str]:
    return {
        "system": ["involution", "partial order", "order-reversing involution"],
        "tree": ["simple connected tree"],
        "order_tree": ["partial order"],
        "bipartition_family": ["symmetric bipartition family"],
        "stree": ["simple connected tree", "involution", "partial order",
                  "order-reversing involution", "labels commute with inversion"],
        "graph": ["simple graph"],
        "tree_decomposition": ["simple graph", "simple connected tree", "tree-decomposition axioms"],
    }[kind]


# -- convert ----------------------------------------------------------------------


def _edge_witness(edge_of: dict) -> list:
    return [[i, plain(e)] for i, e in sorted(edge_of.items())]


def _convert(kind: str, obj, target: str, orientation_path: str | None) -> tuple[Any, Any]:
    if target == "system":
        if kind == "tree":
            ets = edge_tree_set(obj)
            return ets.system, {"edges": [[i, plain(e)] for i, e in enumerate(ets.edge)]}
        if kind == "order_tree":
            ext = treeset_from_order_tree(obj)
            n = len(obj.elements)
            return ext.system, {
                "elements": [[plain(x), k, k + n] for k, x in enumerate(obj.elements)],
                "orientation": sorted(ext.orientation),
            }
        if kind == "bipartition_family":
            return family_as_system(obj), {"pairs": list(range(len(obj.pairs)))}
        if kind == "tree_decomposition":
            ind = extract_separations(obj)
            return ind.stree.host, {"separations": [[plain(a), plain(b)] for a, b in ind.separations]}
        if kind == "stree":
            img = treeset_from_stree(obj)
            return img.regularized, {"host_indices": img.host_indices}
    if target == "tree" and kind == "system":
        rebuilt = tree_from_treeset(obj)
        return rebuilt.tree, {"edge_of": _edge_witness(rebuilt.edge_of)}
    if target == "order_tree" and kind == "system":
        o = _orientation(orientation_path)
        return order_tree_from_oriented(obj, o), {"orientation": sorted(o)}
    if target == "bipartitions" and kind == "system":
        emb = orientation_embed(obj)
        return emb.family, {"image": [[s, k] for s, k in sorted(emb.image.items())]}
    if target == "bipartitions-sparse" and kind == "system":
        emb = directed_embed(obj)
        if not emb.injective:
            stars = maximal_proper_two_stars(obj)
            raise NotInjectiveEmbedding(f"not ever-branching; maximal proper 2-star {list(stars[0])}")
        return emb.family, {"image": [[s, k] for s, k in sorted(emb.image.items())]}
    if target == "decomposition" and kind == "tree_decomposition":
        ind = extract_separations(obj)
        c = classify(ind.stree.host)
        keep = [sep for k, sep in enumerate(ind.separations)
                if not (c.trivial[k] or c.cotrivial[k] or c.degenerate[k])]
        td = decomposition_from_treeset(obj.graph, keep)
        return td, {"separations": [[plain(a), plain(b)] for a, b in keep]}
    raise UnsupportedConversion(f"no conversion from {kind!r} to {target!r}")


def cmd_convert(args) -> int:
    kind, obj = _load(args.file)
    out, witness = _convert(kind, obj, args.to, args.orientation)
    _emit(serial.envelope(out, witness))
    return EXIT_OK


# -- roundtrip ----------------------------------------------------------------------


def _rt_trees_i(kind, obj, args):
    sys_ = _require(kind, obj, ("system",), "trees-i")
    ok = verify_identity_isomorphism(sys_)
    rebuilt = tree_from_treeset(sys_)
    return ok, {"edge_of": _edge_witness(rebuilt.edge_of)}


def _rt_trees_ii(kind, obj, args):
    tree = _require(kind, obj, ("tree",), "trees-ii")
    ok = verify_node_bijection(tree)
    ets = edge_tree_set(tree)
    d = tree.distances
    nodes = [[plain(t), sorted(i for i, (x, y) in enumerate(ets.edge) if d[t][y] < d[t][x])] for t in tree.nodes]
    return ok, {"node_orientations": nodes}


def _rt_order_i(kind, obj, args):
    poset = _require(kind, obj, ("order_tree",), "order-i")
    return verify_order_roundtrip(poset), {"elements": plain(poset.elements)}


def _rt_order_ii(kind, obj, args):
    sys_ = _require(kind, obj, ("system",), "order-ii")
    can = canonize(sys_, _orientation(args.orientation))
    return True, {"mapping": [[i, j] for i, j in sorted(can.mapping.items())]}


def _h_witness(h: dict) -> list:
    return [[plain(x), sorted(o)] for x, o in sorted(h.items(), key=lambda kv: json.dumps(plain(kv[0])))]


def _rt_bipartitions(kind, obj, args):
    obj = _require(kind, obj, ("system", "bipartition_family"), "bipartitions")
    if kind == "system":
        emb = orientation_embed(obj)
        g = {k: s for s, k in emb.image.items()}
        h = recover(emb.family, obj, g)
    else:
        h = recover(obj)
    return True, {"h": _h_witness(h)}


def _rt_sparse(kind, obj, args):
    obj = _require(kind, obj, ("system", "bipartition_family"), "sparse")
    if kind == "system":
        emb = directed_embed(obj)
        if not emb.injective:
            return False, {"maximal_two_stars": [list(p) for p in maximal_proper_two_stars(obj)],
                           "collisions": _collisions(emb.image)}
        g = {k: s for s, k in emb.image.items()}
        h = recover_sparse(emb.family, obj, g)
    else:
        h = recover_sparse(obj)
    return True, {"h": _h_witness(h)}


def _collisions(image: dict) -> list:
    by = {}
    for s, k in sorted(image.items()):
        by.setdefault(k, []).append(s)
    return [v for v in by.values() if len(v) > 1]


def _rt_stree(kind, obj, args):
    obj = _require(kind, obj, ("system", "stree"), "stree")
    if kind == "stree":
        st, _ = essentialize(obj)
        img = treeset_from_stree(st)
        return True, {"host_indices": img.host_indices}
    st = stree_from_treeset(obj)
    img = treeset_from_stree(st)
    core, kept = essential_core(obj)
    ok = img.regularized == regularization(core) and img.host_indices == kept
    # inessential elements have no canonical place in an S-tree, so they are dropped and listed
    dropped = [i for i in range(obj.count) if i not in set(kept)]
    return ok, {"host_indices": img.host_indices, "dropped": dropped, "tree": serial.tree_to_json(st.tree)}


THEOREMS: dict[str, Callable] = {
    "trees-i": _rt_trees_i,
    "trees-ii": _rt_trees_ii,
    "order-i": _rt_order_i,
    "order-ii": _rt_order_ii,
    "bipartitions": _rt_bipartitions,
    "sparse": _rt_sparse,
    "stree": _rt_stree,
}


def cmd_roundtrip(args) -> int:
    kind, obj = _load(args.file)
    ok, witness = THEOREMS[args.theorem](kind, obj, args)
    _emit({"theorem": args.theorem, "passed": bool(ok), "witness": witness})
    return EXIT_OK if ok else EXIT_DOMAIN


# -- canonicalize ---------------------------------------------------------------------


def cmd_canonicalize(args) -> int:
    kind, obj = _load(args.file)
    st = _require(kind, obj, ("stree",), "canonicalize")
    log: list = []
    out, core = essentialize(st, log=log)
    witness = {"log": plain_log(log), "family": sorted(sorted(f) for f in core)}
    _emit(serial.envelope(out, witness))
    return EXIT_OK


def plain_log(log: list) -> list:
    return [{k: plain(v) for k, v in step.items()} for step in log]


# -- generate -------------------------------------------------------------------------


def _generate(kind: str, seed: int, max_size: int):
    rng = random.Random(seed)
    size = rng.randint(1, max(1, max_size))
    if kind == "tree":
        return random_tree(rng, size)
    if kind == "order_tree":
        return random_order_tree(rng, size)
    if kind == "system":
        return random_system(rng, size)
    if kind == "nested_system":
        return planted_nested_system(rng, size, rng.randint(0, 2), rng.randint(0, 1)).system
    if kind == "stree":
        return random_stree(rng, nodes=size, max_nodes=max(size, 2 * size)).stree
    raise UnsupportedConversion(f"cannot generate {kind!r}")


def cmd_generate(args) -> int:
    _emit(serial.envelope(_generate(args.kind, args.seed, args.max_size)))
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tressec", description="Separation systems and tree sets.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the invariants of an envelope")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("convert", help="convert between representations")
    c.add_argument("file")
    c.add_argument("--to", required=True,
                   choices=["tree", "system", "order_tree", "bipartitions", "bipartitions-sparse", "decomposition"])
    c.add_argument("--orientation", help="JSON list of indices forming a consistent orientation")
    c.set_defaults(func=cmd_convert)

    r = sub.add_parser("roundtrip", help="verify a correspondence on one input")
    r.add_argument("file")
    r.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    r.add_argument("--orientation")
    r.set_defaults(func=cmd_roundtrip)

    k = sub.add_parser("canonicalize", help="prune, tighten and essentialize an S-tree")
    k.add_argument("file")
    k.set_defaults(func=cmd_canonicalize)

    g = sub.add_parser("generate", help="emit a seeded random instance")
    g.add_argument("--kind", required=True, choices=["tree", "order_tree", "system", "nested_system", "stree"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-size", type=int, default=6)
    g.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _emit({"error": "ParseError", "detail": str(exc)})
        return EXIT_PARSE
    except TreeSetError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
