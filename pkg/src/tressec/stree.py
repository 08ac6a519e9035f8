"""S-trees: trees whose oriented edges are labelled by oriented separations.

Families ``F`` of allowed node images are plain sets of frozensets of host
indices.  Every fixed-point step picks its witness by node position in
``tree.nodes`` so that results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .core import (
    Classification,
    SeparationSystem,
    classify,
    essential_core,
    is_nested,
    is_star,
    is_tree_set,
    isomorphism_failures,
    nested_pair,
    regularization,
)
from .errors import (
    DegenerateElement,
    InvalidTree,
    Mismatch,
    NotNested,
    NotOverF,
    PreconditionViolated,
    ViolationFound,
)
from .orient import splitting_stars
from .treebridge import GraphTree, edge_tree_set, tree_from_treeset


@dataclass(frozen=True, eq=False)
class STree:
    tree: GraphTree
    alpha: dict  # oriented edge (x, y) -> host index
    host: SeparationSystem

    def __post_init__(self):
        alpha = dict(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        darts = set(self.tree.oriented_edges())
        if set(alpha) != darts:
            raise InvalidTree("alpha must label every oriented edge exactly once")
        for (x, y), s in alpha.items():
            if not 0 <= s < self.host.count:
                raise InvalidTree(f"label {s} is not an element of the host")
            if alpha[(y, x)] != self.host.inv[s]:
                raise InvalidTree(f"alpha does not commute with inversion on {x!r}-{y!r}")

    def image(self, t) -> frozenset[int]:
        """The set ``alpha(F_t)`` associated with node ``t``."""
        return frozenset(self.alpha[(x, t)] for x in self.tree.adjacency[t])

    def images(self) -> dict:
        return {t: self.image(t) for t in self.tree.nodes}

    def labels(self) -> set[int]:
        return set(self.alpha.values())

    def __eq__(self, other):
        if not isinstance(other, STree):
            return NotImplemented
        return self.tree == other.tree and self.alpha == other.alpha and self.host == other.host

    def __hash__(self):
        return hash((self.tree, frozenset(self.alpha.items()), self.host))


def identity_stree(tau: SeparationSystem) -> STree:
    """The tree rebuilt from a tree set, labelled by the identity."""
    rebuilt = tree_from_treeset(tau)
    return STree(rebuilt.tree, dict(rebuilt.index_of), tau)


def _subtree(st: STree, keep: set, extra_edges=(), relabel=None) -> STree:
    tree = st.tree
    nodes = tuple(t for t in tree.nodes if t in keep)
    edges = [e for e in tree.edges if e[0] in keep and e[1] in keep]
    edges.extend(extra_edges)
    alpha = {(x, y): st.alpha[(x, y)] for x, y in st.alpha if x in keep and y in keep}
    if relabel:
        alpha.update(relabel)
    return STree(GraphTree(nodes, tuple(edges)), alpha, st.host)


# -- families -------------------------------------------------------------


def node_family(st: STree) -> set[frozenset[int]]:
    return set(st.images().values())


def is_star_family(sys: SeparationSystem, family: Iterable[Iterable[int]]) -> bool:
    return all(is_star(sys, f) for f in family)


def is_over(st: STree, family: Iterable[Iterable[int]]) -> bool:
    family = {frozenset(f) for f in family}
    return all(img in family for img in st.images().values())


def is_standard(sys: SeparationSystem, family: Iterable[Iterable[int]]) -> bool:
    family = {frozenset(f) for f in family}
    c = classify(sys)
    return all(frozenset((i,)) in family for i in range(sys.count) if c.cotrivial[i])


def essential_core_of_family(sys: SeparationSystem, family: Iterable[Iterable[int]]) -> set[frozenset[int]]:
    c = classify(sys)
    return {frozenset(s for s in f if not c.trivial[s]) for f in family}


# -- pruning ----------------------------------------------------------------


def redundancy_witness(st: STree):
    """Least-labelled ``(t, u, v)`` with ``alpha(t,u) == alpha(t,v)``; ties go by node position."""
    best = None
    for t in st.tree.nodes:
        nbrs = st.tree.neighbours(t)
        for i, u in enumerate(nbrs):
            for v in nbrs[i + 1:]:
                s = st.alpha[(t, u)]
                if s == st.alpha[(t, v)] and (best is None or s < best[0]):
                    best = (s, (t, u, v))
    return best and best[1]


def is_redundant(st: STree) -> bool:
    return redundancy_witness(st) is not None


def prune(st: STree, log: list | None = None) -> STree:
    """Delete redundant branches until the S-tree is irredundant."""
    while (w := redundancy_witness(st)) is not None:
        t, _, v = w
        branch = st.tree.side(v, t)
        if log is not None:
            log.append({"step": "prune", "node": t, "removed": [x for x in st.tree.nodes if x in branch]})
        st = _subtree(st, set(st.tree.nodes) - branch)
    return st


# -- tightening ---------------------------------------------------------------


def tightness_witness(st: STree):
    """Least-labelled ``(t, u, v)`` with ``alpha(u,t) == alpha(t,v)``; ties go by node position.

    Degenerate labels are skipped: they do not make an image non-antisymmetric.
    """
    best = None
    for t in st.tree.nodes:
        nbrs = st.tree.neighbours(t)
        for u in nbrs:
            for v in nbrs:
                s = st.alpha[(u, t)]
                if u != v and s == st.alpha[(t, v)] and st.host.inv[s] != s:
                    if best is None or s < best[0]:
                        best = (s, (t, u, v))
    return best and best[1]


def is_tight(st: STree) -> bool:
    inv = st.host.inv
    for img in st.images().values():
        if any(inv[s] in img and inv[s] != s for s in img):
            return False
    return True


def tighten(st: STree, log: list | None = None) -> STree:
    """Contract edges until every node image is antisymmetric.

    At a witness ``u -> t -> v`` carrying the same label, the part of the
    tree hanging at ``t`` is removed and ``u`` is joined to ``v`` by an edge
    keeping the old label.
    """
    st = prune(st, log)
    while (w := tightness_witness(st)) is not None:
        t, u, v = w
        s = st.alpha[(u, t)]
        middle = st.tree._component(t, {u, v})
        if log is not None:
            log.append({"step": "contract", "node": t, "joined": [u, v],
                        "removed": [x for x in st.tree.nodes if x in middle]})
        keep = set(st.tree.nodes) - middle
        relabel = {(u, v): s, (v, u): st.host.inv[s]}
        st = _subtree(st, keep, extra_edges=[(u, v)], relabel=relabel)
        st = prune(st, log)
    return st


# -- essential S-trees ----------------------------------------------------------


def is_essential(st: STree, classification: Classification | None = None) -> bool:
    c = classification or classify(st.host)
    return (
        not is_redundant(st)
        and is_tight(st)
        and not any(c.trivial[s] for s in st.alpha.values())
    )


class Essentialized(NamedTuple):
    stree: STree
    family: set


def essentialize(st: STree, family: Iterable[Iterable[int]] | None = None, log: list | None = None) -> Essentialized:
    """Prune, tighten, then delete every edge with a trivial label.

    Each trivially labelled oriented edge is removed together with its tail.
    Returns the essential S-tree and the essential core of ``family``
    (default: the node images of the input).
    """
    if family is None:
        family = node_family(st)
    family = {frozenset(f) for f in family}
    st = tighten(st, log)
    c = classify(st.host)
    tails = {x for (x, y), s in st.alpha.items() if c.trivial[s]}
    if tails:
        if log is not None:
            log.append({"step": "delete", "removed": [x for x in st.tree.nodes if x in tails]})
        st = _subtree(st, set(st.tree.nodes) - tails)
    core = essential_core_of_family(st.host, family)
    return Essentialized(st, core)


# -- checks on irredundant S-trees over stars -------------------------------------


def _require_irredundant_over_stars(st: STree):
    if is_redundant(st):
        raise PreconditionViolated("S-tree is redundant")
    if not all(is_star(st.host, img) for img in st.images().values()):
        raise PreconditionViolated("S-tree is not over stars")


class OrderReport(NamedTuple):
    pairs_checked: int
    exceptions: dict  # exception name -> count of exempted pairs
    image_nested: bool


def check_order_preserving(st: STree) -> OrderReport:
    """Check that alpha is monotone and, up to the documented exceptions, reflects strict order.

    Exceptions for ``alpha(e) < alpha(f)`` without ``e < f``:
    ``small``: ``alpha(e) == alpha(inv f)`` is small;
    ``trivial_e``: ``alpha(e)`` is trivial;
    ``trivial_f``: ``alpha(inv f)`` is trivial.
    """
    _require_irredundant_over_stars(st)
    host = st.host
    c = classify(host)
    ets = edge_tree_set(st.tree)
    darts = ets.edge
    lab = [st.alpha[d] for d in darts]
    exceptions = {"small": 0, "trivial_e": 0, "trivial_f": 0}
    checked = 0
    for i in range(len(darts)):
        for j in range(len(darts)):
            checked += 1
            if ets.system.le(i, j) and not host.le(lab[i], lab[j]):
                raise ViolationFound(f"{darts[i]} <= {darts[j]} but labels are not ordered")
            if host.lt(lab[i], lab[j]) and not ets.system.lt(i, j):
                back = host.inv[lab[j]]
                if lab[i] == back and c.small[lab[i]]:
                    exceptions["small"] += 1
                elif c.trivial[lab[i]]:
                    exceptions["trivial_e"] += 1
                elif c.trivial[back]:
                    exceptions["trivial_f"] += 1
                else:
                    raise ViolationFound(f"labels of {darts[i]}, {darts[j]} are ordered but the edges are not")
    labels = sorted(set(lab))
    nested = all(nested_pair(host, r, s) for r in labels for s in labels)
    if not nested:
        raise ViolationFound("image of alpha is not nested")
    return OrderReport(checked, exceptions, nested)


def check_no_facing_duplicates(st: STree) -> int:
    """Check that edges pointing at each other share a label only if it is trivial.

    Returns the number of such pairs found.
    """
    _require_irredundant_over_stars(st)
    c = classify(st.host)
    ets = edge_tree_set(st.tree)
    darts = ets.edge
    found = 0
    for i, e in enumerate(darts):
        for j, f in enumerate(darts):
            if i >> 1 == j >> 1:
                continue
            if ets.system.lt(i, j ^ 1) and st.alpha[e] == st.alpha[f]:
                found += 1
                if not c.trivial[st.alpha[e]]:
                    raise ViolationFound(f"{e} and {f} face each other with the nontrivial label {st.alpha[e]}")
    return found


def check_injective(st: STree) -> bool:
    if not is_essential(st):
        raise PreconditionViolated("S-tree is not essential")
    if not all(is_star(st.host, img) for img in st.images().values()):
        raise PreconditionViolated("S-tree is not over stars")
    values = list(st.alpha.values())
    if len(set(values)) != len(values):
        raise ViolationFound("alpha is not injective on an essential S-tree over stars")
    return True


# -- tree sets and S-trees -------------------------------------------------------


def stree_from_treeset(sys: SeparationSystem, family: Iterable[Iterable[int]] | None = None) -> STree:
    """Represent a nested system over stars by an essential S-tree.

    The tree is rebuilt from the regularized essential core and labelled by
    the identity, viewed as a map into ``sys``.  ``family`` defaults to the
    splitting sets of ``sys``.
    """
    if any(sys.is_degenerate(i) for i in range(sys.count)):
        raise DegenerateElement("a degenerate element would split the system on its own")
    if not is_nested(sys):
        raise NotNested("system is not nested")
    splits = {s.star for s in splitting_stars(sys)}
    family = splits if family is None else {frozenset(f) for f in family}
    if not is_star_family(sys, family):
        raise PreconditionViolated("family contains a non-star")
    missing = splits - family
    if missing:
        raise NotOverF(f"splitting sets {sorted(map(sorted, missing))} are not in the family")
    core, kept = essential_core(sys)
    tau = regularization(core)
    rebuilt = tree_from_treeset(tau)
    alpha = {e: kept[i] for e, i in rebuilt.index_of.items()}
    st = STree(rebuilt.tree, alpha, sys)
    ets = edge_tree_set(rebuilt.tree)
    mapping = {ets.index[e]: i for e, i in rebuilt.index_of.items()}
    problems = isomorphism_failures(ets.system.with_labels(None), tau.with_labels(None), mapping)
    if problems:
        raise Mismatch("labelling is not a tree set isomorphism: " + "; ".join(problems[:3]))
    if set(st.images().values()) != splits:
        raise Mismatch("node images differ from the splitting sets of the system")
    return st


class TreeSetImage(NamedTuple):
    system: SeparationSystem  # induced subsystem of the host on the image
    regularized: SeparationSystem
    host_indices: list[int]  # subsystem index -> host index
    mapping: dict  # edge tree set index -> subsystem index


def treeset_from_stree(st: STree) -> TreeSetImage:
    """The tree set formed by the labels of an essential S-tree over stars."""
    if not is_essential(st):
        raise PreconditionViolated("S-tree is not essential")
    if not all(is_star(st.host, img) for img in st.images().values()):
        raise PreconditionViolated("S-tree is not over stars")
    check_injective(st)
    sub, kept = st.host.restrict(st.labels())
    if not is_tree_set(sub):
        raise ViolationFound("image of an essential S-tree is not a tree set")
    reg = regularization(sub)
    where = {old: new for new, old in enumerate(kept)}
    ets = edge_tree_set(st.tree)
    mapping = {i: where[st.alpha[e]] for i, e in enumerate(ets.edge)}
    problems = isomorphism_failures(ets.system.with_labels(None), reg.with_labels(None), mapping)
    if problems:
        raise ViolationFound("alpha is not a tree set isomorphism: " + "; ".join(problems[:3]))
    return TreeSetImage(sub, reg, kept, mapping)
