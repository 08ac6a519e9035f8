"""Tree sets as nested families of bipartitions of a ground set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, NamedTuple

from .core import (
    SeparationSystem,
    isomorphism_failures,
    is_proper_star,
    is_regular,
    is_tree_set,
)
from .errors import (
    InvalidFamily,
    Mismatch,
    MissingDirectedLabel,
    NotInjectiveEmbedding,
    NotRegular,
    PremiseFailed,
    UnknownElement,
)
from .orient import (
    canonical_key,
    directed_orientations,
    enumerate_consistent,
    is_directed,
)

Pair = tuple[frozenset, frozenset]


@dataclass(frozen=True)
class BipartitionFamily:
    """A symmetric family of ordered bipartitions ``(A, B)`` of ``ground``.

    Pair ``k`` is element ``k`` of the associated separation system.
    """

    ground: tuple
    pairs: tuple[Pair, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        pairs = tuple((frozenset(a), frozenset(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        ground = set(self.ground)
        if len(ground) != len(self.ground):
            raise InvalidFamily("duplicate ground elements")
        if len(set(pairs)) != len(pairs):
            raise InvalidFamily("duplicate bipartitions")
        present = set(pairs)
        for a, b in pairs:
            if not a or not b:
                raise InvalidFamily("bipartition with an empty side")
            if a & b or (a | b) != ground:
                raise InvalidFamily("sides must be disjoint and cover the ground set")
            if (b, a) not in present:
                raise InvalidFamily("family is not closed under swapping sides")

    def index(self, pair) -> int:
        return self.pairs.index((frozenset(pair[0]), frozenset(pair[1])))


def family_as_system(fam: BipartitionFamily) -> SeparationSystem:
    """Inclusion order on first sides, swap involution."""
    where = {p: k for k, p in enumerate(fam.pairs)}
    inv = [where[(b, a)] for a, b in fam.pairs]
    rel = [
        (i, j)
        for i, (a, _) in enumerate(fam.pairs)
        for j, (c, _) in enumerate(fam.pairs)
        if a <= c
    ]
    labels = [f"{sorted(map(str, a))}|{sorted(map(str, b))}" for a, b in fam.pairs]
    return SeparationSystem.from_relation(len(fam.pairs), inv, rel, labels)


def _require_regular_tree_set(tau: SeparationSystem):
    if not is_regular(tau):
        raise NotRegular("a regular tree set is required")
    if not is_tree_set(tau):
        raise NotRegular("input is regular but not a tree set")


class Embedding(NamedTuple):
    family: BipartitionFamily
    image: dict  # element of tau -> index of its bipartition in family
    injective: bool


def _embedding_over(tau: SeparationSystem, points: list, members) -> Embedding:
    # members[p] is the orientation represented by point p
    images = []
    for s in range(tau.count):
        b = frozenset(p for p, o in zip(points, members) if s in o)
        a = frozenset(p for p, o in zip(points, members) if tau.inv[s] in o)
        images.append((a, b))
    injective = len(set(images)) == len(images)
    distinct = list(dict.fromkeys(images))
    fam = BipartitionFamily(tuple(points), tuple(distinct))
    where = {p: k for k, p in enumerate(distinct)}
    image = {s: where[images[s]] for s in range(tau.count)}
    if injective:
        problems = isomorphism_failures(tau.with_labels(None), family_as_system(fam).with_labels(None), image)
        if problems:
            raise Mismatch("embedding is not a tree set isomorphism: " + "; ".join(problems[:3]))
    return Embedding(fam, image, injective)


def simple_embed(tau: SeparationSystem) -> Embedding:
    """Represent ``tau`` by bipartitions of its own element set.

    The side ``X_s`` holds ``s``, everything strictly below ``s`` and the
    inverses of those, but never ``inv(s)``.
    """
    _require_regular_tree_set(tau)
    ground = tuple(range(tau.count))

    def side(s):
        out = {s}
        for r in range(tau.count):
            if tau.lt(r, s):
                out.add(r)
                out.add(tau.inv[r])
        out.discard(tau.inv[s])
        return frozenset(out)

    sides = [side(s) for s in ground]
    pairs = []
    for s in ground:
        a, b = sides[s], sides[tau.inv[s]]
        if a & b:
            raise Mismatch(f"sides of {s} overlap")
        if (a | b) != frozenset(ground):
            raise Mismatch(f"sides of {s} do not cover the ground set")
        pairs.append((a, b))
    fam = BipartitionFamily(ground, tuple(pairs))
    image = {s: s for s in ground}
    problems = isomorphism_failures(tau.with_labels(None), family_as_system(fam).with_labels(None), image)
    if problems:
        raise Mismatch("simple embedding is not an isomorphism: " + "; ".join(problems[:3]))
    return Embedding(fam, image, True)


def orientation_embed(tau: SeparationSystem) -> Embedding:
    """Bipartitions of the set of all consistent orientations."""
    _require_regular_tree_set(tau)
    orientations = enumerate_consistent(tau)
    emb = _embedding_over(tau, [canonical_key(o) for o in orientations], orientations)
    if not emb.injective:
        raise Mismatch("embedding into all consistent orientations is not injective")
    return emb


def directed_embed(tau: SeparationSystem) -> Embedding:
    """Bipartitions of the directed consistent orientations.

    ``injective`` is false exactly when ``tau`` fails to branch everywhere;
    the family then holds the distinct images only.
    """
    _require_regular_tree_set(tau)
    directed = directed_orientations(tau)
    return _embedding_over(tau, [canonical_key(o) for o in directed], directed)


def maximal_proper_two_stars(tau: SeparationSystem) -> list[tuple[int, int]]:
    """Proper stars of order 2 not contained in any proper star of order 3."""
    n = tau.count
    out = []
    for r in range(n):
        for s in range(r + 1, n):
            if not is_proper_star(tau, (r, s)):
                continue
            if not any(t not in (r, s) and is_proper_star(tau, (r, s, t)) for t in range(n)):
                out.append((r, s))
    return out


def is_ever_branching(tau: SeparationSystem) -> bool:
    _require_regular_tree_set(tau)
    return not maximal_proper_two_stars(tau)


def induced_orientation(fam: BipartitionFamily, x) -> frozenset[int]:
    """Indices of all pairs whose second side contains ``x``."""
    if x not in fam.ground:
        raise UnknownElement(x)
    return frozenset(k for k, (_, b) in enumerate(fam.pairs) if x in b)


def indistinguishable_pairs(fam: BipartitionFamily) -> list[tuple[Hashable, Hashable]]:
    out = []
    for i, x in enumerate(fam.ground):
        for y in fam.ground[i + 1:]:
            if all((x in b) == (y in b) for _, b in fam.pairs):
                out.append((x, y))
    return out


def dedupe(fam: BipartitionFamily) -> BipartitionFamily:
    """Keep only the first element of each class of indistinguishable elements."""
    drop = {y for _, y in indistinguishable_pairs(fam)}
    keep = frozenset(x for x in fam.ground if x not in drop)
    return BipartitionFamily(
        tuple(x for x in fam.ground if x in keep),
        tuple((a & keep, b & keep) for a, b in fam.pairs),
    )


def _check_iso(fam_sys: SeparationSystem, tau: SeparationSystem, g: Mapping[int, int]):
    problems = isomorphism_failures(fam_sys.with_labels(None), tau.with_labels(None), g)
    if problems:
        raise PremiseFailed("isomorphism", "; ".join(problems[:3]))


def _action_matches(fam, tau, h, g, orientations_index):
    # h(x) is an orientation of tau; the image of (A, B) under h must be f(g(pair))
    for k, (a, b) in enumerate(fam.pairs):
        s = g[k]
        ha = {canonical_key(h[x]) for x in a if x in h}
        hb = {canonical_key(h[x]) for x in b if x in h}
        fa = {key for key in orientations_index if tau.inv[s] in orientations_index[key]}
        fb = {key for key in orientations_index if s in orientations_index[key]}
        if ha != fa or hb != fb:
            return False
    return True


def recover(fam: BipartitionFamily, tau: SeparationSystem | None = None, g: Mapping[int, int] | None = None) -> dict:
    """Bijection from the ground set onto the consistent orientations of ``tau``.

    ``g`` maps pair indices of ``fam`` to elements of ``tau`` and must be a
    tree set isomorphism; by default ``tau`` is the family's own system and
    ``g`` the identity.  Both premises are checked and reported by name.
    """
    fam_sys = family_as_system(fam)
    if tau is None:
        tau = fam_sys
    if g is None:
        g = {k: k for k in range(len(fam.pairs))}
    if not (is_regular(fam_sys) and is_tree_set(fam_sys)):
        raise PremiseFailed("tree set", "the family is not a nested family")
    _check_iso(fam_sys, tau, g)
    clones = indistinguishable_pairs(fam)
    if clones:
        raise PremiseFailed("first", f"elements {clones[0]!r} are not distinguished")
    induced = {x: induced_orientation(fam, x) for x in fam.ground}
    induced_keys = {canonical_key(o) for o in induced.values()}
    for o in enumerate_consistent(fam_sys):
        if canonical_key(o) not in induced_keys:
            raise PremiseFailed("second", f"consistent orientation {sorted(o)} is induced by no element")
    h = {x: frozenset(g[k] for k in o) for x, o in induced.items()}
    targets = {canonical_key(o): o for o in enumerate_consistent(tau)}
    if {canonical_key(o) for o in h.values()} != set(targets) or len(h) != len(targets):
        raise Mismatch("recovered map is not a bijection onto the consistent orientations")
    if not _action_matches(fam, tau, h, g, targets):
        raise Mismatch("action of the recovered map differs from f composed with g")
    return h


def recover_sparse(fam: BipartitionFamily, tau: SeparationSystem | None = None, g: Mapping[int, int] | None = None) -> dict:
    """Bijection from ``X'`` onto the directed consistent orientations of ``tau``.

    ``X'`` is the set of elements inducing a directed consistent orientation;
    each such orientation must be induced by exactly one element.
    """
    fam_sys = family_as_system(fam)
    if tau is None:
        tau = fam_sys
    if g is None:
        g = {k: k for k in range(len(fam.pairs))}
    if not (is_regular(fam_sys) and is_tree_set(fam_sys)):
        raise PremiseFailed("tree set", "the family is not a nested family")
    if maximal_proper_two_stars(fam_sys):
        raise PremiseFailed("ever-branching", f"maximal proper 2-star {maximal_proper_two_stars(fam_sys)[0]}")
    _check_iso(fam_sys, tau, g)
    induced = {x: induced_orientation(fam, x) for x in fam.ground}
    chosen = {}
    for o in directed_orientations(fam_sys):
        xs = [x for x, ox in induced.items() if ox == o]
        if not xs:
            raise PremiseFailed("existence", f"directed orientation {sorted(o)} is induced by no element")
        if len(xs) > 1:
            raise PremiseFailed("uniqueness", f"elements {xs!r} induce the same directed orientation")
        chosen[xs[0]] = o
    h = {x: frozenset(g[k] for k in o) for x, o in chosen.items()}
    targets = {canonical_key(o): o for o in directed_orientations(tau)}
    if {canonical_key(o) for o in h.values()} != set(targets) or len(h) != len(targets):
        raise Mismatch("recovered map is not a bijection onto the directed orientations")
    if not _action_matches(fam, tau, h, g, targets):
        raise Mismatch("action of the recovered map differs from f' composed with g")
    return h


def mixed_embed(tau: SeparationSystem, assignment: Mapping) -> Embedding:
    """Bipartitions of labels attached to some consistent orientations.

    ``assignment`` maps orientations (any iterable of indices) to labels and
    must label every directed orientation.
    """
    _require_regular_tree_set(tau)
    orientations = enumerate_consistent(tau)
    labelled = {canonical_key(o): lab for o, lab in assignment.items()}
    known = {canonical_key(o) for o in orientations}
    stray = set(labelled) - known
    if stray:
        raise MissingDirectedLabel(f"assignment names non-orientations {sorted(stray)}")
    for o in orientations:
        if is_directed(tau, o) and canonical_key(o) not in labelled:
            raise MissingDirectedLabel(f"directed orientation {sorted(o)} has no label")
    if len(set(labelled.values())) != len(labelled):
        raise MissingDirectedLabel("labels must be distinct")
    members = [o for o in orientations if canonical_key(o) in labelled]
    emb = _embedding_over(tau, [labelled[canonical_key(o)] for o in members], members)
    if not emb.injective:
        raise NotInjectiveEmbedding("two elements receive the same bipartition")
    return emb
