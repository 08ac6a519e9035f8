"""Reference implementations written straight from the definitions.

Nothing here imports the package's algorithms; relations are plain sets of
pairs and trees are networkx graphs.
"""

from __future__ import annotations

from itertools import combinations, product

import networkx as nx


def relation_of(sys) -> set[tuple[int, int]]:
    """Read the order of a system as a set of pairs using only ``le``."""
    n = sys.count
    return {(i, j) for i in range(n) for j in range(n) if sys.le(i, j)}


def transitive_closure(n: int, pairs) -> set[tuple[int, int]]:
    rel = {(i, i) for i in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def separations(n: int, inv) -> list[tuple[int, ...]]:
    seen = []
    for i in range(n):
        s = tuple(sorted({i, inv[i]}))
        if s not in seen:
            seen.append(s)
    return seen


def classify(n: int, inv, rel):
    """Per-index (small, trivial, degenerate) straight from the definitions."""
    lt = {(a, b) for a, b in rel if a != b}
    out = []
    for i in range(n):
        small = (i, inv[i]) in rel
        degenerate = inv[i] == i
        trivial = any(
            j not in (i, inv[i]) and (i, j) in lt and (i, inv[j]) in lt for j in range(n)
        )
        out.append((small, trivial, degenerate))
    return out


def nested(n: int, inv, rel) -> bool:
    for r, s in combinations(range(n), 2):
        if s in (r, inv[r]):
            continue
        if not any((a, b) in rel or (b, a) in rel for a in (r, inv[r]) for b in (s, inv[s])):
            return False
    return True


def consistent_orientations(n: int, inv, rel) -> set[frozenset[int]]:
    """All full consistent orientations by trying every choice of sides."""
    lt = {(a, b) for a, b in rel if a != b}
    seps = separations(n, inv)
    bad = [0] * n
    for a in range(n):
        for b in range(n):
            if {a, inv[a]} != {b, inv[b]} and (inv[a], b) in lt:
                bad[a] |= 1 << b
                bad[b] |= 1 << a
    out = set()
    for choice in product(*seps):
        mask = 0
        for x in choice:
            mask |= 1 << x
        if all(not (bad[x] & mask) for x in choice):
            out.add(frozenset(choice))
    return out


def maximal(rel, members) -> frozenset[int]:
    return frozenset(s for s in members if not any(t != s and (s, t) in rel for t in members))


# -- trees ------------------------------------------------------------------------


def as_graph(tree) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(tree.nodes)
    g.add_edges_from(tree.edges)
    return g


def side(g: nx.Graph, x, y) -> frozenset:
    """Nodes on the ``x`` side of the edge ``xy``."""
    h = g.copy()
    h.remove_edge(x, y)
    return frozenset(nx.node_connected_component(h, x))


def edge_order(tree, darts) -> set[tuple[int, int]]:
    """``(x,y) <= (u,v)`` iff the ``x`` side of ``xy`` lies inside the ``u`` side of ``uv``."""
    g = as_graph(tree)
    sides = [side(g, x, y) for x, y in darts]
    return {(i, j) for i in range(len(darts)) for j in range(len(darts)) if sides[i] <= sides[j]}


def node_stars(tree, darts) -> dict:
    where = {d: k for k, d in enumerate(darts)}
    g = as_graph(tree)
    return {t: frozenset(where[(x, t)] for x in g.neighbors(t)) for t in tree.nodes}


def orientation_towards(tree, darts, t) -> frozenset[int]:
    g = as_graph(tree)
    return frozenset(k for k, (x, y) in enumerate(darts) if t in side(g, y, x))


def degree_two_free(tree) -> bool:
    return all(d != 2 for _, d in as_graph(tree).degree())


# -- order trees --------------------------------------------------------------------


def order_extension(elements, less) -> set[tuple[int, int]]:
    """The order on ``X`` and ``X*`` with ``x`` at ``k`` and ``x*`` at ``k + n``."""
    n = len(elements)
    rel = {(i, i) for i in range(2 * n)}
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if i == j:
                continue
            if less(a, b):
                rel.add((i, j))
                rel.add((j + n, i + n))
            elif not less(b, a):
                rel.add((i + n, j))
    return rel
