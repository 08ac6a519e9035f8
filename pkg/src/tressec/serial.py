"""JSON encoding of every structure in the package.

Node and ground-set labels may be JSON scalars or arrays; arrays decode to
tuples so that labels stay hashable.  Sets are written sorted by their JSON
text, which keeps the output stable.
"""

from __future__ import annotations

import json
from typing import Any

from .bipart import BipartitionFamily
from .core import SeparationSystem
from .errors import TreeSetError
from .graphdecomp import Graph, TreeDecomposition
from .orderbridge import Poset
from .stree import STree
from .treebridge import GraphTree

FORMAT_VERSION = "1"
KINDS = ("system", "tree", "order_tree", "bipartition_family", "stree", "graph", "tree_decomposition")


class ParseError(TreeSetError, ValueError):
    """Malformed JSON or a payload that does not match its schema."""


def plain(x) -> Any:
    """Turn tuples and sets into JSON-ready lists."""
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((plain(v) for v in x), key=_key)
    return x


def _key(x) -> str:
    return json.dumps(x, sort_keys=True)


def hashable(x) -> Any:
    if isinstance(x, list):
        return tuple(hashable(v) for v in x)
    if isinstance(x, dict):
        raise ParseError("objects cannot be used as labels")
    return x


def _field(payload: dict, name: str, kind: str):
    if not isinstance(payload, dict):
        raise ParseError(f"{kind} payload must be an object")
    if name not in payload:
        raise ParseError(f"{kind} payload lacks '{name}'")
    return payload[name]


def _pairs(value, what: str) -> list[tuple]:
    if not isinstance(value, list) or not all(isinstance(p, list) and len(p) == 2 for p in value):
        raise ParseError(f"{what} must be a list of pairs")
    return [(hashable(a), hashable(b)) for a, b in value]


# -- per kind -----------------------------------------------------------------


def system_to_json(sys: SeparationSystem) -> dict:
    le = sorted((i, j) for i, j in sys.relation() if i != j)
    return {
        "count": sys.count,
        "inv": list(sys.inv),
        "le": [list(p) for p in le],
        "labels": None if sys.labels is None else list(sys.labels),
    }


def system_from_json(payload: dict) -> SeparationSystem:
    count = _field(payload, "count", "system")
    inv = _field(payload, "inv", "system")
    le = _pairs(payload.get("le", []), "le")
    labels = payload.get("labels")
    if not isinstance(count, int) or not isinstance(inv, list):
        raise ParseError("count must be an integer and inv a list")
    if not all(isinstance(i, int) for p in le for i in p):
        raise ParseError("le must hold index pairs")
    return SeparationSystem.from_relation(count, inv, le, labels)


def tree_to_json(tree: GraphTree) -> dict:
    return {"nodes": plain(tree.nodes), "edges": plain(tree.edges)}


def tree_from_json(payload: dict) -> GraphTree:
    nodes = _field(payload, "nodes", "tree")
    edges = _pairs(_field(payload, "edges", "tree"), "edges")
    if not isinstance(nodes, list):
        raise ParseError("nodes must be a list")
    return GraphTree(tuple(hashable(t) for t in nodes), tuple(edges))


def order_tree_to_json(poset: Poset) -> dict:
    pos = poset.position
    lt = sorted(poset.lt, key=lambda p: (pos[p[0]], pos[p[1]]))
    return {"elements": plain(poset.elements), "lt": plain(lt)}


def order_tree_from_json(payload: dict) -> Poset:
    elements = _field(payload, "elements", "order_tree")
    if not isinstance(elements, list):
        raise ParseError("elements must be a list")
    lt = _pairs(payload.get("lt", []), "lt")
    return Poset.build([hashable(x) for x in elements], lt)


def family_to_json(fam: BipartitionFamily) -> dict:
    return {"ground": plain(fam.ground), "pairs": [[plain(a), plain(b)] for a, b in fam.pairs]}


def family_from_json(payload: dict) -> BipartitionFamily:
    ground = _field(payload, "ground", "bipartition_family")
    pairs = _field(payload, "pairs", "bipartition_family")
    if not isinstance(ground, list):
        raise ParseError("ground must be a list")
    out = []
    for a, b in _pairs(pairs, "pairs"):
        if not isinstance(a, tuple) or not isinstance(b, tuple):
            raise ParseError("each side must be a list")
        out.append((frozenset(a), frozenset(b)))
    return BipartitionFamily(tuple(hashable(x) for x in ground), tuple(out))


def stree_to_json(st: STree) -> dict:
    alpha = [[plain(x), plain(y), st.alpha[(x, y)]] for x, y in st.tree.oriented_edges()]
    return {"tree": tree_to_json(st.tree), "alpha": alpha, "system": system_to_json(st.host)}


def stree_from_json(payload: dict) -> STree:
    tree = tree_from_json(_field(payload, "tree", "stree"))
    host = system_from_json(_field(payload, "system", "stree"))
    raw = _field(payload, "alpha", "stree")
    if not isinstance(raw, list) or not all(isinstance(r, list) and len(r) == 3 for r in raw):
        raise ParseError("alpha must be a list of [x, y, index] triples")
    alpha = {}
    for x, y, s in raw:
        if not isinstance(s, int):
            raise ParseError("alpha values must be indices")
        alpha[(hashable(x), hashable(y))] = s
    return STree(tree, alpha, host)


def graph_to_json(g: Graph) -> dict:
    return {"vertices": plain(g.vertices), "edges": plain(g.edges)}


def graph_from_json(payload: dict) -> Graph:
    vertices = _field(payload, "vertices", "graph")
    if not isinstance(vertices, list):
        raise ParseError("vertices must be a list")
    edges = _pairs(_field(payload, "edges", "graph"), "edges")
    return Graph(tuple(hashable(v) for v in vertices), tuple(edges))


def _node_key(t) -> str:
    return t if isinstance(t, str) else _key(plain(t))


def decomposition_to_json(td: TreeDecomposition) -> dict:
    return {
        "graph": graph_to_json(td.graph),
        "tree": tree_to_json(td.tree),
        "parts": {_node_key(t): plain(td.parts[t]) for t in td.tree.nodes},
    }


def decomposition_from_json(payload: dict) -> TreeDecomposition:
    g = graph_from_json(_field(payload, "graph", "tree_decomposition"))
    tree = tree_from_json(_field(payload, "tree", "tree_decomposition"))
    raw = _field(payload, "parts", "tree_decomposition")
    if not isinstance(raw, dict):
        raise ParseError("parts must be an object keyed by node")
    lookup = {_node_key(t): t for t in tree.nodes}
    parts = {}
    for k, vs in raw.items():
        if k not in lookup:
            raise ParseError(f"parts names unknown node {k!r}")
        if not isinstance(vs, list):
            raise ParseError("each part must be a list")
        parts[lookup[k]] = frozenset(hashable(v) for v in vs)
    return TreeDecomposition(g, tree, parts)


ENCODERS = {
    "system": system_to_json,
    "tree": tree_to_json,
    "order_tree": order_tree_to_json,
    "bipartition_family": family_to_json,
    "stree": stree_to_json,
    "graph": graph_to_json,
    "tree_decomposition": decomposition_to_json,
}
DECODERS = {
    "system": system_from_json,
    "tree": tree_from_json,
    "order_tree": order_tree_from_json,
    "bipartition_family": family_from_json,
    "stree": stree_from_json,
    "graph": graph_from_json,
    "tree_decomposition": decomposition_from_json,
}
TYPES = {
    SeparationSystem: "system",
    GraphTree: "tree",
    Poset: "order_tree",
    BipartitionFamily: "bipartition_family",
    STree: "stree",
    Graph: "graph",
    TreeDecomposition: "tree_decomposition",
}


# -- envelopes ------------------------------------------------------------------


def kind_of(obj) -> str:
    try:
        return TYPES[type(obj)]
    except KeyError:
        raise TypeError(f"cannot serialize {type(obj).__name__}") from None


def envelope(obj, witness=None) -> dict:
    kind = kind_of(obj)
    out = {"format_version": FORMAT_VERSION, "kind": kind, "payload": ENCODERS[kind](obj)}
    if witness is not None:
        out["witness"] = witness
    return out


def dumps(obj, witness=None) -> str:
    return json.dumps(envelope(obj, witness), sort_keys=True, indent=2, ensure_ascii=False)


def parse_envelope(data: dict) -> tuple[str, Any]:
    """Decode an envelope into ``(kind, object)``.

    Schema problems raise ``ParseError``; structural violations of a well
    formed payload raise the module's own errors.
    """
    if not isinstance(data, dict):
        raise ParseError("envelope must be a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    kind = data.get("kind")
    if kind not in DECODERS:
        raise ParseError(f"unknown kind {kind!r}")
    if "payload" not in data:
        raise ParseError("envelope lacks a payload")
    try:
        return kind, DECODERS[kind](data["payload"])
    except (TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, TreeSetError):
            raise
        raise ParseError(f"malformed {kind} payload: {exc}") from exc


def loads(text: str) -> tuple[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return parse_envelope(data)
