"""Orientations of separation systems.

An orientation is a ``frozenset`` of oriented indices of its host system.
Full orientations pick exactly one orientation of every separation; partial
ones are antisymmetric subsets.
"""

from __future__ import annotations

import os
from itertools import product
from typing import Iterable, NamedTuple

from .core import (
    SeparationSystem,
    classify,
    is_nested,
    is_regular,
    is_tree_set,
    iter_bits,
    to_mask,
)
from .errors import (
    NotFound,
    NotUnique,
    PreconditionViolated,
    TooLarge,
    Unextendable,
)

DEFAULT_MAX_ORIENTED = 40
BRUTE_FORCE_MAX_SEPARATIONS = 20
ENV_MAX_ORIENTED = "TRESSEC_MAX_ORIENTED"


def max_oriented_bound(max_oriented: int | None = None) -> int:
    if max_oriented is not None:
        return max_oriented
    env = os.environ.get(ENV_MAX_ORIENTED)
    return int(env) if env else DEFAULT_MAX_ORIENTED


def canonical_key(orientation: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(orientation))


def is_antisymmetric(sys: SeparationSystem, members: Iterable[int]) -> bool:
    members = set(members)
    return not any(sys.inv[i] in members and sys.inv[i] != i for i in members)


def is_full(sys: SeparationSystem, members: Iterable[int]) -> bool:
    members = set(members)
    return all((i in members) != (j in members) or (i == j and i in members) for i, j in sys.separations())


def is_orientation(sys: SeparationSystem, members: Iterable[int]) -> bool:
    members = set(members)
    return is_antisymmetric(sys, members) and is_full(sys, members)


def _pair_consistent(sys: SeparationSystem, a: int, b: int) -> bool:
    # {a, b} is inconsistent iff inv(a) < b for distinct separations
    if sys.sep(a) == sys.sep(b):
        return True
    return not (sys.lt(sys.inv[a], b) or sys.lt(sys.inv[b], a))


def is_consistent(sys: SeparationSystem, members: Iterable[int]) -> bool:
    members = sorted(set(members))
    return all(_pair_consistent(sys, a, b) for k, a in enumerate(members) for b in members[k + 1:])


def compatibility_masks(sys: SeparationSystem) -> list[int]:
    """``mask[a]`` holds every ``b`` such that ``{a, b}`` is consistent and antisymmetric."""
    n = sys.count
    inv = sys.inv
    masks = []
    for a in range(n):
        m = 0
        for b in range(n):
            if b == inv[a] and b != a:
                continue
            if _pair_consistent(sys, a, b):
                m |= 1 << b
        masks.append(m)
    return masks


def down_closure(sys: SeparationSystem, members: Iterable[int]) -> frozenset[int]:
    mask = 0
    for s in members:
        mask |= sys.down[s]
    return frozenset(iter_bits(mask))


def maximal_elements(sys: SeparationSystem, orientation: Iterable[int]) -> frozenset[int]:
    members = set(orientation)
    return frozenset(s for s in members if not any(sys.lt(s, t) for t in members))


def _search(sys: SeparationSystem, forced: int, compat: list[int]):
    """Depth-first search over full consistent orientations containing ``forced``.

    Separations are decided in index order, lower orientation index first.
    Yields bitmasks.
    """
    seps = sys.separations()
    for i in iter_bits(forced):
        if not (compat[i] >> i & 1):
            return
    allowed = -1
    for i in iter_bits(forced):
        allowed &= compat[i]
    if forced & ~allowed:
        return

    def rec(k: int, chosen: int, allowed: int):
        if k == len(seps):
            yield chosen
            return
        # lookahead: every later separation still needs an admissible side
        for i, j in seps[k:]:
            if not (allowed >> i & 1 or allowed >> j & 1):
                return
        i, j = seps[k]
        if chosen >> i & 1 or chosen >> j & 1:
            yield from rec(k + 1, chosen, allowed)
            return
        for x in (i, j) if i != j else (i,):
            if allowed >> x & 1:
                yield from rec(k + 1, chosen | 1 << x, allowed & compat[x])

    yield from rec(0, forced, allowed)


def extend_partial(sys: SeparationSystem, members: Iterable[int]) -> frozenset[int]:
    """Extend a consistent antisymmetric set to a full consistent orientation.

    Deterministic: the first extension found by the index-ordered search.
    """
    members = set(members)
    if not is_antisymmetric(sys, members) or not is_consistent(sys, members):
        raise PreconditionViolated("members must be antisymmetric and consistent")
    for found in _search(sys, to_mask(members), compatibility_masks(sys)):
        return frozenset(iter_bits(found))
    raise Unextendable("no consistent orientation contains the given set")


def enumerate_consistent(sys: SeparationSystem, max_oriented: int | None = None) -> list[frozenset[int]]:
    """All full consistent orientations, sorted by their sorted member tuples."""
    bound = max_oriented_bound(max_oriented)
    if sys.count > bound:
        raise TooLarge(f"{sys.count} oriented separations exceed the bound {bound}")
    found = [frozenset(iter_bits(m)) for m in _search(sys, 0, compatibility_masks(sys))]
    return sorted(found, key=canonical_key)


def enumerate_consistent_bruteforce(sys: SeparationSystem) -> list[frozenset[int]]:
    """Reference enumeration: test every choice of one orientation per separation."""
    seps = sys.separations()
    if len(seps) > BRUTE_FORCE_MAX_SEPARATIONS:
        raise TooLarge(f"{len(seps)} separations exceed the brute-force bound")
    out = []
    for choice in product(*[(i, j) if i != j else (i,) for i, j in seps]):
        if is_consistent(sys, choice):
            out.append(frozenset(choice))
    return sorted(out, key=canonical_key)


class Split(NamedTuple):
    star: frozenset[int]
    orientation: frozenset[int]


def splitting_stars(sys: SeparationSystem, max_oriented: int | None = None) -> list[Split]:
    """Sets of maximal elements of full consistent orientations, with witnesses.

    In a finite system every consistent orientation lies in the down-closure
    of its maximal elements; that containment is asserted, not assumed.
    """
    seen = {}
    for o in enumerate_consistent(sys, max_oriented):
        sigma = maximal_elements(sys, o)
        if not o <= down_closure(sys, sigma):
            raise AssertionError("finite orientation escapes the down-closure of its maxima")
        seen.setdefault(canonical_key(sigma), Split(sigma, o))
    return [seen[k] for k in sorted(seen)]


def orientation_with_max(sys: SeparationSystem, s: int, orientations=None) -> frozenset[int]:
    """The unique full consistent orientation in which ``s`` is maximal."""
    if orientations is None:
        orientations = enumerate_consistent(sys)
    hits = [o for o in orientations if s in o and s in maximal_elements(sys, o)]
    if not hits:
        raise NotFound(f"no consistent orientation has {s} as a maximal element")
    if len(hits) > 1:
        raise NotUnique(f"{len(hits)} consistent orientations have {s} as a maximal element")
    return hits[0]


def is_directed(sys: SeparationSystem, orientation: Iterable[int]) -> bool:
    members = list(orientation)
    return all(
        any(sys.le(r, t) and sys.le(s, t) for t in members)
        for k, r in enumerate(members)
        for s in members[k + 1:]
    )


def directed_orientations(sys: SeparationSystem, orientations=None) -> list[frozenset[int]]:
    if orientations is None:
        orientations = enumerate_consistent(sys)
    return [o for o in orientations if is_directed(sys, o)]


def maximal_chain_through(sys: SeparationSystem, s: int) -> list[int]:
    """A maximal chain containing ``s``, grown by least-index covers."""
    def covers_up(x):
        above = [y for y in iter_bits(sys.up[x]) if y != x]
        return [y for y in above if not any(sys.lt(z, y) for z in above if z != y)]

    def covers_down(x):
        below = [y for y in iter_bits(sys.down[x]) if y != x]
        return [y for y in below if not any(sys.lt(y, z) for z in below if z != y)]

    chain = [s]
    while True:
        nxt = covers_up(chain[-1])
        if not nxt:
            break
        chain.append(min(nxt))
    while True:
        nxt = covers_down(chain[0])
        if not nxt:
            break
        chain.insert(0, min(nxt))
    return chain


def directed_orientation_containing(sys: SeparationSystem, s: int) -> frozenset[int]:
    """Down-closure of a maximal chain through ``s`` in a regular tree set."""
    if not (is_regular(sys) and is_tree_set(sys)):
        raise PreconditionViolated("a finite regular tree set is required")
    o = down_closure(sys, maximal_chain_through(sys, s))
    if not (is_orientation(sys, o) and is_consistent(sys, o) and is_directed(sys, o)):
        raise AssertionError("chain down-closure is not a directed consistent orientation")
    return o


def has_single_degenerate_orientation(sys: SeparationSystem) -> bool:
    """Check the degenerate case of nested systems.

    A nested system with a degenerate element ``d`` has exactly one
    consistent orientation, and ``d`` is its greatest element.  Returns
    ``False`` when the system has no degenerate element.
    """
    c = classify(sys)
    degenerate = [i for i, d in enumerate(c.degenerate) if d]
    if not degenerate or not is_nested(sys):
        return False
    orientations = enumerate_consistent(sys)
    if len(degenerate) != 1 or len(orientations) != 1:
        return False
    (o,) = orientations
    d = degenerate[0]
    return all(sys.le(x, d) for x in o)
