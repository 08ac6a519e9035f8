"""Tree-decompositions of graphs and the tree sets of separations they induce."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .core import SeparationSystem, classify, is_nested
from .errors import (
    InvalidDecomposition,
    InvalidTree,
    Mismatch,
    NotEssential,
    NotNested,
    NotSeparationsOfG,
)
from .stree import STree, stree_from_treeset
from .treebridge import GraphTree

Separation = tuple[frozenset, frozenset]


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidTree("duplicate vertices")
        known = set(self.vertices)
        seen = set()
        for u, v in self.edges:
            if u not in known or v not in known:
                raise InvalidTree(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            if u == v:
                raise InvalidTree(f"loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidTree(f"parallel edge {u!r}-{v!r}")
            seen.add(key)

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)


def grid_graph(rows: int, cols: int) -> Graph:
    vertices = [(r, c) for r in range(rows) for c in range(cols)]
    edges = [((r, c), (r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [((r, c), (r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return Graph(tuple(vertices), tuple(edges))


def path_graph(n: int) -> Graph:
    return Graph(tuple(range(n)), tuple((i, i + 1) for i in range(n - 1)))


def is_graph_separation(g: Graph, a: Iterable, b: Iterable) -> bool:
    a, b = frozenset(a), frozenset(b)
    if a | b != g.vertex_set:
        return False
    only_a, only_b = a - b, b - a
    return not any(
        (u in only_a and v in only_b) or (u in only_b and v in only_a) for u, v in g.edges
    )


@dataclass(frozen=True)
class TreeDecomposition:
    graph: Graph
    tree: GraphTree
    parts: dict  # node -> frozenset of vertices

    def __post_init__(self):
        parts = {t: frozenset(p) for t, p in dict(self.parts).items()}
        object.__setattr__(self, "parts", parts)
        if set(parts) != set(self.tree.nodes):
            raise InvalidDecomposition("every tree node needs exactly one part")
        vs = self.graph.vertex_set
        for t, p in parts.items():
            if not p <= vs:
                raise InvalidDecomposition(f"part of {t!r} contains vertices outside the graph")
        if frozenset().union(*parts.values()) != vs:
            raise InvalidDecomposition("parts do not cover every vertex")
        for u, v in self.graph.edges:
            if not any(u in p and v in p for p in parts.values()):
                raise InvalidDecomposition(f"edge ({u!r}, {v!r}) lies in no part")
        # parts containing a vertex must span a subtree
        for x in self.graph.vertices:
            holding = {t for t, p in parts.items() if x in p}
            start = next(iter(holding))
            reached = self.tree._component(start, set(self.tree.nodes) - holding)
            if reached != holding:
                raise InvalidDecomposition(f"parts containing {x!r} are not connected in the tree")

    def __eq__(self, other):
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return (self.graph, self.tree, self.parts) == (other.graph, other.tree, other.parts)

    def __hash__(self):
        return hash((self.graph, self.tree, frozenset(self.parts.items())))


def path_decomposition(g: Graph, bags: Iterable[Iterable]) -> TreeDecomposition:
    bags = [frozenset(b) for b in bags]
    tree = GraphTree(tuple(range(len(bags))), tuple((k, k + 1) for k in range(len(bags) - 1)))
    return TreeDecomposition(g, tree, dict(enumerate(bags)))


def separation_system(seps: list[Separation]) -> SeparationSystem:
    """Separations ordered by ``(A, B) <= (C, D)`` iff ``A <= C`` and ``B >= D``."""
    where = {s: k for k, s in enumerate(seps)}
    try:
        inv = [where[(b, a)] for a, b in seps]
    except KeyError as exc:
        raise NotSeparationsOfG("set of separations is not closed under inversion") from exc
    rel = [
        (i, j)
        for i, (a, b) in enumerate(seps)
        for j, (c, d) in enumerate(seps)
        if a <= c and b >= d
    ]
    labels = [f"{_fmt(a)}|{_fmt(b)}" for a, b in seps]
    return SeparationSystem.from_relation(len(seps), inv, rel, labels)


def _fmt(vs) -> str:
    return "{" + ",".join(sorted(map(str, vs))) + "}"


class InducedSTree(NamedTuple):
    stree: STree
    separations: list  # host index -> (A, B)


def extract_separations(td: TreeDecomposition) -> InducedSTree:
    """Label each oriented tree edge by the separation it induces on the graph."""
    tree = td.tree
    pairs = {}
    for x, y in tree.oriented_edges():
        near = frozenset().union(*(td.parts[t] for t in tree.side(x, y)))
        far = frozenset().union(*(td.parts[t] for t in tree.side(y, x)))
        if not is_graph_separation(td.graph, near, far):
            raise InvalidDecomposition(f"edge ({x!r}, {y!r}) does not induce a separation")
        pairs[(x, y)] = (near, far)
    seps = sorted(set(pairs.values()), key=lambda s: (sorted(map(repr, s[0])), sorted(map(repr, s[1]))))
    index = {s: k for k, s in enumerate(seps)}
    host = separation_system(seps)
    alpha = {e: index[s] for e, s in pairs.items()}
    return InducedSTree(STree(tree, alpha, host), seps)


def parts_from_stree(st: STree, separations: list, graph: Graph) -> dict:
    """``V_t`` as the intersection of the far sides of the separations pointing at ``t``."""
    parts = {}
    for t in st.tree.nodes:
        part = graph.vertex_set
        for s in st.image(t):
            part = part & separations[s][1]
        parts[t] = part
    return parts


def decomposition_from_treeset(g: Graph, seps: Iterable[tuple[Iterable, Iterable]]) -> TreeDecomposition:
    """Rebuild a tree-decomposition from a tree set of separations of ``g``.

    Nodes of the result are ``0..k-1`` in the order of the rebuilt tree.
    """
    seps = list(dict.fromkeys((frozenset(a), frozenset(b)) for a, b in seps))
    for a, b in seps:
        if not is_graph_separation(g, a, b):
            raise NotSeparationsOfG(f"({_fmt(a)}, {_fmt(b)}) is not a separation of the graph")
    sys = separation_system(seps)
    if not is_nested(sys):
        raise NotNested("separations are not nested")
    c = classify(sys)
    if any(c.trivial) or any(c.degenerate):
        raise NotEssential("separations contain trivial or degenerate elements")
    st = stree_from_treeset(sys)
    parts = parts_from_stree(st, seps, g)
    rename = {t: k for k, t in enumerate(st.tree.nodes)}
    tree = GraphTree(tuple(range(len(rename))), tuple((rename[u], rename[v]) for u, v in st.tree.edges))
    td = TreeDecomposition(g, tree, {rename[t]: p for t, p in parts.items()})
    induced = extract_separations(td)
    if set(induced.separations) != set(seps):
        raise Mismatch("rebuilt decomposition induces different separations")
    return td


def node_correspondence(a: TreeDecomposition, b: TreeDecomposition) -> dict:
    """Match nodes of two decompositions of one graph by the separations pointing at them."""
    def signature(td):
        ind = extract_separations(td)
        return {
            t: frozenset(ind.separations[s] for s in ind.stree.image(t)) for t in td.tree.nodes
        }

    sa, sb = signature(a), signature(b)
    back = {}
    for t, sig in sb.items():
        if sig in back:
            raise Mismatch("two nodes have the same incoming separations")
        back[sig] = t
    mapping = {}
    for t, sig in sa.items():
        if sig not in back:
            raise Mismatch(f"node {t!r} has no counterpart")
        mapping[t] = back[sig]
    if len(set(mapping.values())) != len(mapping) or len(mapping) != len(sb):
        raise Mismatch("nodes do not correspond one to one")
    return mapping


def same_decomposition(a: TreeDecomposition, b: TreeDecomposition) -> bool:
    """Equal parts and edges under the node correspondence."""
    if a.graph != b.graph:
        return False
    try:
        mapping = node_correspondence(a, b)
    except Mismatch:
        return False
    return (
        all(a.parts[t] == b.parts[mapping[t]] for t in a.tree.nodes)
        and a.tree.is_isomorphic_by(b.tree, mapping)
    )
