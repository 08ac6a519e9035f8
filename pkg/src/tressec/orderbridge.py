"""Order trees and consistently oriented tree sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple

from .core import (
    SeparationSystem,
    isomorphism_failures,
    is_regular,
    is_tree_set,
    iter_bits,
)
from .errors import Mismatch, NotAnOrderTree, NotAPoset, PreconditionViolated
from .orient import is_consistent, is_orientation, is_antisymmetric


@dataclass(frozen=True)
class Poset:
    """A finite strict partial order; ``lt`` is stored transitively closed."""

    elements: tuple
    lt: frozenset[tuple[Hashable, Hashable]]

    @classmethod
    def build(cls, elements: Iterable, lt_generators: Iterable = ()) -> "Poset":
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise NotAPoset("duplicate elements")
        pos = {x: k for k, x in enumerate(elements)}
        n = len(elements)
        up = [0] * n
        for a, b in lt_generators:
            if a not in pos or b not in pos:
                raise NotAPoset(f"pair ({a!r}, {b!r}) uses an unknown element")
            up[pos[a]] |= 1 << pos[b]
        for k in range(n):
            for i in range(n):
                if up[i] >> k & 1:
                    up[i] |= up[k]
        for i in range(n):
            if up[i] >> i & 1:
                raise NotAPoset(f"cycle through {elements[i]!r}")
        lt = frozenset((elements[i], elements[j]) for i in range(n) for j in iter_bits(up[i]))
        return cls(elements, lt)

    @cached_property
    def position(self) -> dict:
        return {x: k for k, x in enumerate(self.elements)}

    def less(self, a, b) -> bool:
        return (a, b) in self.lt

    def comparable(self, a, b) -> bool:
        return a == b or (a, b) in self.lt or (b, a) in self.lt

    def strict_down(self, t) -> list:
        return [s for s in self.elements if (s, t) in self.lt]


def is_order_tree(poset: Poset) -> bool:
    """Every strict down-set is a chain."""
    for t in poset.elements:
        below = poset.strict_down(t)
        for k, a in enumerate(below):
            for b in below[k + 1:]:
                if not poset.comparable(a, b):
                    return False
    return True


def is_connected_order_tree(poset: Poset) -> bool:
    if not is_order_tree(poset):
        return False
    els = poset.elements
    for k, a in enumerate(els):
        for b in els[k + 1:]:
            if not any((x == a or poset.less(x, a)) and (x == b or poset.less(x, b)) for x in els):
                return False
    return True


class OrderTreeSet(NamedTuple):
    system: SeparationSystem
    x_part: list[int]  # index of each element of X, in poset order
    orientation: frozenset[int]  # the added inverses X*


def treeset_from_order_tree(tree: Poset) -> OrderTreeSet:
    """Extend an order tree to a regular tree set by adding inverses.

    Element ``k`` of ``tree.elements`` is index ``k``; its inverse is
    ``k + n``.  Inverses are ordered reversely among themselves, and
    ``x* < y`` exactly when ``x`` and ``y`` are incomparable.
    """
    if not is_order_tree(tree):
        raise NotAnOrderTree("some strict down-set is not a chain")
    els = tree.elements
    n = len(els)
    inv = [k + n for k in range(n)] + list(range(n))
    rel = []
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            if i == j:
                continue
            if tree.less(a, b):
                rel.append((i, j))
                rel.append((j + n, i + n))
            elif not tree.less(b, a):
                rel.append((i + n, j))
    labels = [str(x) for x in els] + [f"{x}*" for x in els]
    system = SeparationSystem.from_relation(2 * n, inv, rel, labels)
    # the extended relation must already be transitive
    given = set(rel) | {(i, i) for i in range(2 * n)}
    if system.relation() != given:
        raise Mismatch("extended order on X and X* is not transitive")
    if not (is_regular(system) and is_tree_set(system)):
        raise Mismatch("extension of an order tree is not a regular tree set")
    star = frozenset(range(n, 2 * n))
    if not (is_orientation(system, star) and is_consistent(system, star)):
        raise Mismatch("the added inverses are not a consistent orientation")
    return OrderTreeSet(system, list(range(n)), star)


def _require_oriented_regular_tree_set(tau: SeparationSystem, orientation) -> frozenset[int]:
    orientation = frozenset(orientation)
    if not (is_regular(tau) and is_tree_set(tau)):
        raise PreconditionViolated("a regular tree set is required")
    if not (is_orientation(tau, orientation) and is_consistent(tau, orientation)):
        raise PreconditionViolated("a full consistent orientation is required")
    return orientation


def order_tree_from_oriented(tau: SeparationSystem, orientation: Iterable[int]) -> Poset:
    """The subposet of ``tau`` on the elements outside ``orientation``.

    Elements of the result are indices of ``tau``.
    """
    orientation = _require_oriented_regular_tree_set(tau, orientation)
    rest = [i for i in range(tau.count) if i not in orientation]
    lt = [(a, b) for a in rest for b in rest if tau.lt(a, b)]
    poset = Poset.build(rest, lt)
    if not is_order_tree(poset):
        raise Mismatch("removing a consistent orientation did not leave an order tree")
    return poset


class Canonization(NamedTuple):
    mapping: dict  # index of tau' -> index of tau
    system: SeparationSystem
    order_tree: Poset
    extension: OrderTreeSet


def canonize(tau: SeparationSystem, orientation: Iterable[int]) -> Canonization:
    """Map ``tau`` onto the canonical extension of the order tree it leaves.

    The map is the identity on the complement of ``orientation`` and sends
    ``o`` in ``orientation`` to the inverse of the image of ``inv(o)``.
    """
    orientation = _require_oriented_regular_tree_set(tau, orientation)
    tree = order_tree_from_oriented(tau, orientation)
    ext = treeset_from_order_tree(tree)
    n = len(tree.elements)
    where = {x: k for k, x in enumerate(tree.elements)}
    mapping = {}
    for i in range(tau.count):
        if i in orientation:
            mapping[i] = where[tau.inv[i]] + n
        else:
            mapping[i] = where[i]
    problems = isomorphism_failures(tau, ext.system, mapping)
    if problems:
        raise Mismatch("canonization is not an isomorphism: " + "; ".join(problems[:3]))
    if frozenset(mapping[o] for o in orientation) != ext.orientation:
        raise Mismatch("canonization does not map the orientation onto the added inverses")
    return Canonization(mapping, ext.system, tree, ext)


def verify_order_roundtrip(tree: Poset) -> bool:
    """Check that going to a tree set and back returns the same order on X."""
    ext = treeset_from_order_tree(tree)
    back = order_tree_from_oriented(ext.system, ext.orientation)
    if list(back.elements) != ext.x_part:
        return False
    els = tree.elements
    relabelled = {(els[a], els[b]) for a, b in back.lt}
    return relabelled == set(tree.lt)


def check_unique_extension(tau: SeparationSystem, xs: Iterable[int]) -> bool:
    """Check that ``tau`` induces the canonical extension on ``X`` and its inverses."""
    xs = sorted(set(xs))
    if not (is_regular(tau) and is_tree_set(tau)):
        raise PreconditionViolated("a regular tree set is required")
    if not is_antisymmetric(tau, xs):
        raise PreconditionViolated("X must be antisymmetric")
    poset = Poset.build(xs, [(a, b) for a in xs for b in xs if tau.lt(a, b)])
    if not is_order_tree(poset):
        raise PreconditionViolated("X is not an order tree")
    stars = [tau.inv[x] for x in xs]
    if not is_consistent(tau, stars):
        raise PreconditionViolated("the inverses of X are not consistent")
    sub, kept = tau.restrict(xs + stars)
    ext = treeset_from_order_tree(poset)
    n = len(xs)
    where = {old: new for new, old in enumerate(kept)}
    # ext index k is xs[k]; k + n is its inverse
    mapping = {where[xs[k]]: k for k in range(n)}
    mapping.update({where[tau.inv[xs[k]]]: k + n for k in range(n)})
    return not isomorphism_failures(sub.with_labels(None), ext.system.with_labels(None), mapping)
