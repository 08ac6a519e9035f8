"""Graph-theoretical trees and their edge tree sets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, NamedTuple

from .core import (
    SeparationSystem,
    build_system,
    is_isomorphism,
    is_regular,
    is_tree_set,
)
from .errors import InvalidTree, Mismatch, NotATreeSet, PreconditionViolated, UnknownNode
from .orient import canonical_key, enumerate_consistent, maximal_elements, splitting_stars

Node = Hashable


@dataclass(frozen=True)
class GraphTree:
    """A finite tree given by its nodes and undirected edges."""

    nodes: tuple
    edges: tuple[tuple[Node, Node], ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidTree("duplicate node labels")
        if not self.nodes:
            raise InvalidTree("a tree needs at least one node")
        known = set(self.nodes)
        seen = set()
        for u, v in self.edges:
            if u not in known or v not in known:
                raise InvalidTree(f"edge ({u!r}, {v!r}) uses an unknown node")
            if u == v:
                raise InvalidTree(f"loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidTree(f"parallel edge {u!r}-{v!r}")
            seen.add(key)
        if len(self.edges) != len(self.nodes) - 1:
            raise InvalidTree("a tree on n nodes has n-1 edges")
        if len(self._component(self.nodes[0], set())) != len(self.nodes):
            raise InvalidTree("graph is not connected")

    @cached_property
    def adjacency(self) -> dict:
        adj = {t: [] for t in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @cached_property
    def position(self) -> dict:
        return {t: k for k, t in enumerate(self.nodes)}

    def neighbours(self, t) -> list:
        if t not in self.position:
            raise UnknownNode(t)
        return sorted(self.adjacency[t], key=self.position.__getitem__)

    def _component(self, start, blocked: set) -> set:
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in seen and y not in blocked:
                    seen.add(y)
                    queue.append(y)
        return seen

    def side(self, x, y) -> set:
        """Nodes of the component of ``T - xy`` that contains ``x``."""
        return self._component(x, {y})

    @cached_property
    def distances(self) -> dict:
        dist = {}
        for s in self.nodes:
            d = {s: 0}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if y not in d:
                        d[y] = d[x] + 1
                        queue.append(y)
            dist[s] = d
        return dist

    def oriented_edges(self) -> list[tuple[Node, Node]]:
        out = []
        for u, v in self.edges:
            out.append((u, v))
            out.append((v, u))
        return out

    def is_isomorphic_by(self, other: "GraphTree", mapping: dict) -> bool:
        if sorted(map(self.position.get, mapping)) != list(range(len(self.nodes))):
            return False
        if sorted(mapping.values(), key=other.position.get) != list(other.nodes):
            return False
        mine = {frozenset((mapping[u], mapping[v])) for u, v in self.edges}
        theirs = {frozenset(e) for e in other.edges}
        return mine == theirs


def path_tree(n: int) -> GraphTree:
    return GraphTree(tuple(range(n)), tuple((i, i + 1) for i in range(n - 1)))


def star_tree(leaves: int) -> GraphTree:
    return GraphTree(tuple(range(leaves + 1)), tuple((0, i) for i in range(1, leaves + 1)))


class EdgeTreeSet(NamedTuple):
    system: SeparationSystem
    index: dict  # oriented edge (x, y) -> index
    edge: list  # index -> oriented edge


def edge_tree_set(tree: GraphTree) -> EdgeTreeSet:
    """The edge tree set: oriented edges under the path ordering.

    Edge ``k`` of ``tree.edges`` gives indices ``2k`` (as listed) and
    ``2k+1`` (reversed).
    """
    darts = tree.oriented_edges()
    index = {e: i for i, e in enumerate(darts)}
    inv = [i ^ 1 for i in range(len(darts))]
    d = tree.distances if darts else {}
    gens = []
    for i, (x, y) in enumerate(darts):
        for j, (u, v) in enumerate(darts):
            if i >> 1 == j >> 1:
                continue
            # the connecting path runs from y to u
            if d[y][u] < d[x][u] and d[y][u] < d[y][v]:
                gens.append((i, j))
    labels = [f"({x},{y})" for x, y in darts]
    system = build_system(len(darts), inv, gens, labels)
    return EdgeTreeSet(system, index, darts)


def oriented_star_at(tree: GraphTree, t) -> frozenset[int]:
    if t not in tree.position:
        raise UnknownNode(t)
    index = edge_tree_set(tree).index
    return frozenset(index[(x, t)] for x in tree.adjacency[t])


def node_orientation(tree: GraphTree, t) -> frozenset[int]:
    """Indices of all oriented edges pointing towards ``t``."""
    if t not in tree.position:
        raise UnknownNode(t)
    d = tree.distances[t]
    ets = edge_tree_set(tree)
    return frozenset(i for i, (x, y) in enumerate(ets.edge) if d[y] < d[x])


class SplittingReport(NamedTuple):
    matched: bool
    stars: list
    node_stars: dict


def check_splitting_stars(tree: GraphTree, max_oriented: int | None = None) -> SplittingReport:
    ets = edge_tree_set(tree)
    found = {canonical_key(s.star) for s in splitting_stars(ets.system, max_oriented)}
    node_stars = {t: frozenset(ets.index[(x, t)] for x in tree.adjacency[t]) for t in tree.nodes}
    expected = {canonical_key(s) for s in node_stars.values()}
    if found != expected or len(expected) != len(tree.nodes):
        raise Mismatch(f"splitting stars {sorted(found)} differ from node stars {sorted(expected)}")
    return SplittingReport(True, sorted(found), node_stars)


class TreeFromTreeSet(NamedTuple):
    tree: GraphTree
    edge_of: dict  # element index -> oriented edge (tail, head)
    index_of: dict  # oriented edge -> element index
    orientation_of: dict  # node label -> orientation


def tree_from_treeset(tau: SeparationSystem, max_oriented: int | None = None) -> TreeFromTreeSet:
    """Rebuild a tree whose nodes are the consistent orientations of ``tau``.

    Each element ``s`` becomes the edge running from the orientation in which
    ``inv(s)`` is maximal to the one in which ``s`` is maximal.  Nodes are
    labelled by their sorted member tuples.
    """
    if not is_tree_set(tau):
        raise NotATreeSet("input is not a tree set")
    orientations = enumerate_consistent(tau, max_oriented)
    top = {}
    for o in orientations:
        for s in maximal_elements(tau, o):
            if s in top:
                raise Mismatch(f"{s} is maximal in two consistent orientations")
            top[s] = canonical_key(o)
    missing = [s for s in range(tau.count) if s not in top]
    if missing:
        raise Mismatch(f"elements {missing} are maximal in no consistent orientation")
    nodes = tuple(canonical_key(o) for o in orientations)
    edges = []
    edge_of = {}
    for i, j in tau.separations():
        edges.append((top[j], top[i]))
        edge_of[i] = (top[j], top[i])
        edge_of[j] = (top[i], top[j])
    tree = GraphTree(nodes, tuple(edges))
    index_of = {e: i for i, e in edge_of.items()}
    return TreeFromTreeSet(tree, edge_of, index_of, {canonical_key(o): o for o in orientations})


def verify_identity_isomorphism(tau: SeparationSystem) -> bool:
    """Check that ``tau`` is the edge tree set of the tree rebuilt from it."""
    if not (is_regular(tau) and is_tree_set(tau)):
        raise PreconditionViolated("a finite regular tree set is required")
    rebuilt = tree_from_treeset(tau)
    ets = edge_tree_set(rebuilt.tree)
    mapping = [ets.index[rebuilt.edge_of[i]] for i in range(tau.count)]
    return is_isomorphism(tau, ets.system, mapping)


def verify_node_bijection(tree: GraphTree) -> bool:
    """Check that ``t -> O_t`` is a graph isomorphism onto the rebuilt tree."""
    ets = edge_tree_set(tree)
    rebuilt = tree_from_treeset(ets.system)
    d = tree.distances
    mapping = {
        t: canonical_key(i for i, (x, y) in enumerate(ets.edge) if d[t][y] < d[t][x])
        for t in tree.nodes
    }
    if len(set(mapping.values())) != len(tree.nodes):
        return False
    if set(mapping.values()) != set(rebuilt.tree.nodes):
        return False
    return tree.is_isomorphic_by(rebuilt.tree, mapping)
