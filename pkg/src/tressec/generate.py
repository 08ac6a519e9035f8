"""Seeded random instances for tests and the ``generate`` command.

Every generator takes a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import NamedTuple

from .core import SeparationSystem, build_system
from .errors import NotAPoset
from .orderbridge import Poset
from .stree import STree, node_family
from .treebridge import GraphTree, edge_tree_set


def random_tree(rng: random.Random, n: int) -> GraphTree:
    """Uniform labelled tree on ``0..n-1`` via a Pruefer sequence."""
    if n < 1:
        raise ValueError("a tree needs at least one node")
    if n == 1:
        return GraphTree((0,), ())
    if n == 2:
        return GraphTree((0, 1), ((0, 1),))
    code = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return GraphTree(tuple(range(n)), tuple(edges))


def random_order_tree(rng: random.Random, n: int) -> Poset:
    """A forest order on ``0..n-1``: each element picks an earlier parent or none."""
    parent = {}
    for k in range(n):
        parent[k] = rng.choice([None] + list(range(k))) if k else None
    lt = [(parent[k], k) for k in range(n) if parent[k] is not None]
    return Poset.build(range(n), lt)


def random_system(rng: random.Random, separations: int, density: float = 0.2, degenerate: bool = False) -> SeparationSystem:
    """A random separation system, possibly crossing.

    Generators are drawn until the closure would stop being a poset.
    """
    count = 2 * separations + (1 if degenerate else 0)
    inv = [i ^ 1 for i in range(2 * separations)] + ([count - 1] if degenerate else [])
    pairs = [(i, j) for i in range(count) for j in range(count) if i != j]
    rng.shuffle(pairs)
    gens = []
    sys = build_system(count, inv)
    for pair in pairs[: int(density * len(pairs))]:
        try:
            sys = build_system(count, inv, gens + [pair])
        except NotAPoset:
            continue
        gens.append(pair)
    return sys


class PlantedSystem(NamedTuple):
    system: SeparationSystem
    tree: GraphTree
    trivial: list  # (index, node it was planted at, neighbour witnessing it)
    small: list  # indices made small without being trivial


def planted_nested_system(rng: random.Random, nodes: int, trivial: int = 0, small: int = 0) -> PlantedSystem:
    """The edge tree set of a random tree with small and trivial elements added.

    A trivial element planted at node ``t`` with neighbour ``x`` lies below
    every oriented edge pointing away from ``t`` and below ``(x, t)``, and
    below the inverse of every earlier planted element.  Small elements are
    made by putting a leaf edge below its own inverse.
    """
    tree = random_tree(rng, nodes)
    ets = edge_tree_set(tree)
    base = ets.system
    gens = [(i, j) for i in range(base.count) for j in range(base.count) if i != j and base.le(i, j)]
    inv = list(base.inv)
    smalls = []
    leaf_darts = [i for i, (x, y) in enumerate(ets.edge) if len(tree.adjacency[x]) == 1]
    rng.shuffle(leaf_darts)
    used = set()
    for i in leaf_darts:
        if len(smalls) >= small:
            break
        if i >> 1 in used:
            continue
        used.add(i >> 1)
        gens.append((i, inv[i]))
        smalls.append(i)
    planted = []
    for _ in range(trivial if tree.edges else 0):
        t = rng.choice(tree.nodes)
        x = rng.choice(tree.adjacency[t])
        r = len(inv)
        inv += [r + 1, r]
        d = tree.distances[t]
        for k, (a, b) in enumerate(ets.edge):
            if d[b] > d[a]:
                gens.append((r, k))
        gens.append((r, ets.index[(x, t)]))
        for q, _, _ in planted:
            gens.append((r, inv[q]))
        planted.append((r, t, x))
    labels = list(base.labels) + [f"r{k}{s}" for k in range(len(planted)) for s in ("", "*")]
    sys = build_system(len(inv), inv, gens, labels)
    return PlantedSystem(sys, tree, planted, smalls)


def _attach_copy(st: STree, t, u, tag) -> STree:
    """Duplicate the branch of ``t`` through ``u`` and hang the copy at ``t``."""
    branch = st.tree.side(u, t)
    name = {b: (tag, b) for b in branch}
    nodes = st.tree.nodes + tuple(name[b] for b in st.tree.nodes if b in branch)
    edges = list(st.tree.edges)
    alpha = dict(st.alpha)
    for a, b in st.tree.edges:
        if a in branch and b in branch:
            edges.append((name[a], name[b]))
            alpha[(name[a], name[b])] = st.alpha[(a, b)]
            alpha[(name[b], name[a])] = st.alpha[(b, a)]
    edges.append((t, name[u]))
    alpha[(t, name[u])] = st.alpha[(t, u)]
    alpha[(name[u], t)] = st.alpha[(u, t)]
    return STree(GraphTree(nodes, tuple(edges)), alpha, st.host)


def _subdivide(st: STree, u, v, tag) -> STree:
    """Put a new node on ``uv`` whose two edges both carry the old label."""
    w = (tag, "mid")
    edges = [e for e in st.tree.edges if set(e) != {u, v}] + [(u, w), (w, v)]
    alpha = {e: s for e, s in st.alpha.items() if set(e) != {u, v}}
    alpha[(u, w)] = alpha[(w, v)] = st.alpha[(u, v)]
    alpha[(w, u)] = alpha[(v, w)] = st.alpha[(v, u)]
    return STree(GraphTree(st.tree.nodes + (w,), tuple(edges)), alpha, st.host)


def _hang_trivial(st: STree, r: int, t, tag) -> STree:
    leaf = (tag, "leaf")
    alpha = dict(st.alpha)
    alpha[(leaf, t)] = r
    alpha[(t, leaf)] = st.host.inv[r]
    return STree(GraphTree(st.tree.nodes + (leaf,), st.tree.edges + ((leaf, t),)), alpha, st.host)


class RandomSTree(NamedTuple):
    stree: STree
    family: set
    planted: PlantedSystem


def random_stree(rng: random.Random, nodes: int = 5, trivial: int = 2, small: int = 1,
                 copies: int = 1, subdivisions: int = 1, max_nodes: int = 10) -> RandomSTree:
    """A random S-tree over stars with redundancy, loose edges and trivial labels.

    The family is the set of node images, so the S-tree is over it by
    construction.
    """
    planted = planted_nested_system(rng, nodes, trivial, small)
    tree = planted.tree
    ets = edge_tree_set(tree)
    alpha = {e: ets.index[e] for e in ets.edge}
    st = STree(tree, alpha, planted.system)
    for k, (r, t, _) in enumerate(planted.trivial):
        if len(st.tree.nodes) < max_nodes:
            st = _hang_trivial(st, r, t, ("trivial", k))
    for k in range(copies):
        if not st.tree.edges:
            break
        t = rng.choice(st.tree.nodes)
        u = rng.choice(st.tree.adjacency[t])
        if len(st.tree.nodes) + len(st.tree.side(u, t)) <= max_nodes:
            st = _attach_copy(st, t, u, ("copy", k))
    for k in range(subdivisions):
        if not st.tree.edges or len(st.tree.nodes) >= max_nodes:
            break
        u, v = rng.choice(st.tree.edges)
        st = _subdivide(st, u, v, ("sub", k))
    return RandomSTree(st, node_family(st), planted)


def binary_tree(depth: int) -> GraphTree:
    """Complete tree with internal nodes of degree 3 (the root has two children and a leaf)."""
    nodes = [0]
    edges = []
    frontier = [0]
    nxt = 1
    for _ in range(depth):
        new = []
        for p in frontier:
            for _ in range(2):
                nodes.append(nxt)
                edges.append((p, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    if depth:
        nodes.append(nxt)
        edges.append((0, nxt))
    return GraphTree(tuple(nodes), tuple(edges))


def caterpillar(spine: int, legs: list[int]) -> GraphTree:
    """A path of ``spine`` nodes with ``legs[k]`` leaves hung at spine node ``k``."""
    nodes = list(range(spine))
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for k, m in enumerate(legs):
        for _ in range(m):
            nodes.append(nxt)
            edges.append((k, nxt))
            nxt += 1
    return GraphTree(tuple(nodes), tuple(edges))
