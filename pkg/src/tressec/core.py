"""Finite separation systems: posets with an order-reversing involution.

Oriented separations are the integers ``0 .. count-1``.  The order is kept as
its full reflexive-transitive closure, one bitmask per element, so every
comparison is a single bit test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadInvolution,
    InvolutionNotOrderReversing,
    NotAPoset,
    NotEssential,
)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def _closure(count: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    up = [1 << i for i in range(count)]
    for i, j in pairs:
        if not (0 <= i < count and 0 <= j < count):
            raise NotAPoset(f"relation pair ({i}, {j}) out of range")
        up[i] |= 1 << j
    for k in range(count):
        bit = 1 << k
        upk = up[k]
        for i in range(count):
            if up[i] & bit:
                up[i] |= upk
    return up


def _check_involution(count: int, inv: Sequence[int]) -> tuple[int, ...]:
    inv = tuple(int(x) for x in inv)
    if len(inv) != count:
        raise BadInvolution(f"involution has {len(inv)} entries, expected {count}")
    for i, j in enumerate(inv):
        if not 0 <= j < count or inv[j] != i:
            raise BadInvolution(f"inv is not an involution at index {i}")
    return inv


@dataclass(frozen=True, eq=False)
class SeparationSystem:
    """A finite separation system.

    ``up[i]`` is the bitmask of all ``j`` with ``i <= j``.  Instances are
    validated on construction and never mutated afterwards; use
    :func:`build_system` or :meth:`from_relation` rather than calling the
    constructor with hand-made masks.
    """

    inv: tuple[int, ...]
    up: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.inv)
        _check_involution(n, self.inv)
        if len(self.up) != n:
            raise NotAPoset("order masks do not match element count")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must have one entry per element")
        up = self.up
        for i in range(n):
            if not up[i] >> i & 1:
                raise NotAPoset(f"relation is not reflexive at {i}")
            for j in iter_bits(up[i]):
                if j >= n:
                    raise NotAPoset("relation mask out of range")
                if up[j] & ~up[i]:
                    raise NotAPoset(f"relation is not transitive through {j}")
                if j != i and up[j] >> i & 1:
                    raise NotAPoset(f"antisymmetry fails between {i} and {j}")
        inv = self.inv
        for i in range(n):
            for j in iter_bits(up[i]):
                if not up[inv[j]] >> inv[i] & 1:
                    raise InvolutionNotOrderReversing(
                        f"{i} <= {j} but not inv({j})={inv[j]} <= inv({i})={inv[i]}"
                    )

    @classmethod
    def from_relation(cls, count, inv, le, labels=None) -> "SeparationSystem":
        """Close ``le`` transitively and validate it as given (no dualizing)."""
        inv = _check_involution(count, inv)
        up = _closure(count, le)
        return cls(inv, tuple(up), None if labels is None else tuple(str(x) for x in labels))

    # -- basic queries -------------------------------------------------

    @property
    def count(self) -> int:
        return len(self.inv)

    def __len__(self) -> int:
        return len(self.inv)

    def le(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.count
        for i, m in enumerate(self.up):
            for j in iter_bits(m):
                down[j] |= 1 << i
        return tuple(down)

    def sep(self, i: int) -> int:
        """Canonical id of the separation ``{i, inv(i)}``: its smaller index."""
        return min(i, self.inv[i])

    def separations(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.inv) if i <= j]

    def is_degenerate(self, i: int) -> bool:
        return self.inv[i] == i

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def relation(self, strict: bool = False) -> set[tuple[int, int]]:
        return {
            (i, j)
            for i, m in enumerate(self.up)
            for j in iter_bits(m)
            if not (strict and i == j)
        }

    def restrict(self, indices: Iterable[int]) -> tuple["SeparationSystem", list[int]]:
        """Induced subsystem on an inverse-closed index set.

        Returns the subsystem and the list ``kept`` with ``kept[new] = old``.
        """
        kept = sorted(set(indices))
        where = {old: new for new, old in enumerate(kept)}
        for old in kept:
            if self.inv[old] not in where:
                raise ValueError(f"index set is not closed under inversion at {old}")
        keep_mask = to_mask(kept)
        inv = tuple(where[self.inv[old]] for old in kept)
        up = tuple(
            to_mask(where[j] for j in iter_bits(self.up[old] & keep_mask)) for old in kept
        )
        labels = None if self.labels is None else tuple(self.labels[old] for old in kept)
        return SeparationSystem(inv, up, labels), kept

    def with_labels(self, labels) -> "SeparationSystem":
        return SeparationSystem(self.inv, self.up, None if labels is None else tuple(map(str, labels)))

    def __eq__(self, other):
        if not isinstance(other, SeparationSystem):
            return NotImplemented
        return self.inv == other.inv and self.up == other.up and self.labels == other.labels

    def __hash__(self):
        return hash((self.inv, self.up, self.labels))

    def __repr__(self):
        strict = sorted(self.relation(strict=True))
        return f"SeparationSystem(count={self.count}, inv={list(self.inv)}, lt={strict})"


def build_system(count: int, inv: Sequence[int], le_generators: Iterable[tuple[int, int]] = (), labels=None) -> SeparationSystem:
    """Build a system from generating pairs.

    Every generator ``i <= j`` also contributes its dual ``inv(j) <= inv(i)``
    before the transitive closure is taken.
    """
    inv = _check_involution(count, inv)
    pairs = []
    for i, j in le_generators:
        pairs.append((i, j))
        pairs.append((inv[j], inv[i]))
    return SeparationSystem.from_relation(count, inv, pairs, labels)


def empty_system() -> SeparationSystem:
    return SeparationSystem((), ())


# -- classification -----------------------------------------------------


@dataclass(frozen=True)
class Classification:
    small: tuple[bool, ...]
    trivial: tuple[bool, ...]
    cotrivial: tuple[bool, ...]
    degenerate: tuple[bool, ...]
    # least witnessing separation as (i, inv(i)) with i <= inv(i), or None
    witness: tuple[tuple[int, int] | None, ...]


def trivial_witnesses(sys: SeparationSystem, i: int) -> list[tuple[int, int]]:
    """All separations witnessing that ``i`` is trivial, in index order."""
    out = []
    own = sys.sep(i)
    for j, k in sys.separations():
        if j == own:
            continue
        if sys.lt(i, j) and sys.lt(i, k):
            out.append((j, k))
    return out


def classify(sys: SeparationSystem) -> Classification:
    n = sys.count
    inv = sys.inv
    small = tuple(sys.le(i, inv[i]) for i in range(n))
    witness = []
    for i in range(n):
        w = None
        # only small elements can be trivial
        if small[i] and inv[i] != i:
            found = trivial_witnesses(sys, i)
            w = found[0] if found else None
        witness.append(w)
    trivial = tuple(w is not None for w in witness)
    return Classification(
        small=small,
        trivial=trivial,
        cotrivial=tuple(trivial[inv[i]] for i in range(n)),
        degenerate=tuple(inv[i] == i for i in range(n)),
        witness=tuple(witness),
    )


def nested_pair(sys: SeparationSystem, r: int, s: int) -> bool:
    """Whether the separations of ``r`` and ``s`` have comparable orientations."""
    t = sys.inv[s]
    return sys.le(r, s) or sys.le(s, r) or sys.le(r, t) or sys.le(t, r)


def is_nested(sys: SeparationSystem) -> bool:
    seps = [i for i, _ in sys.separations()]
    return all(nested_pair(sys, r, s) for a, r in enumerate(seps) for s in seps[a + 1:])


def crossing_pairs(sys: SeparationSystem) -> list[tuple[int, int]]:
    seps = [i for i, _ in sys.separations()]
    return [(r, s) for a, r in enumerate(seps) for s in seps[a + 1:] if not nested_pair(sys, r, s)]


def is_regular(sys: SeparationSystem) -> bool:
    return not any(sys.le(i, j) for i, j in enumerate(sys.inv))


def is_essential(sys: SeparationSystem) -> bool:
    c = classify(sys)
    return not any(c.trivial) and not any(c.degenerate)


def is_tree_set(sys: SeparationSystem) -> bool:
    return is_nested(sys) and is_essential(sys)


def essential_indices(sys: SeparationSystem) -> list[int]:
    c = classify(sys)
    return [
        i
        for i in range(sys.count)
        if not (c.degenerate[i] or c.trivial[i] or c.cotrivial[i])
    ]


def essential_core(sys: SeparationSystem) -> tuple[SeparationSystem, list[int]]:
    """Delete degenerate, trivial and co-trivial elements.

    Returns the core and the list mapping core indices back to ``sys``.
    """
    return sys.restrict(essential_indices(sys))


def regularization(sys: SeparationSystem) -> SeparationSystem:
    """Drop every relation ``s <= inv(s)`` from an essential system."""
    if not is_essential(sys):
        raise NotEssential("regularization needs an essential system")
    up = tuple(m & ~(1 << sys.inv[i]) for i, m in enumerate(sys.up))
    return SeparationSystem(sys.inv, up, sys.labels)


# -- stars --------------------------------------------------------------


def is_star(sys: SeparationSystem, members: Iterable[int]) -> bool:
    members = sorted(set(members))
    if any(sys.is_degenerate(i) for i in members):
        return False
    inv = sys.inv
    return all(sys.le(r, inv[s]) for r in members for s in members if r != s)


def is_proper_star(sys: SeparationSystem, members: Iterable[int]) -> bool:
    members = sorted(set(members))
    if not is_star(sys, members):
        return False
    inv = sys.inv
    for r in members:
        for s in members:
            if r == s:
                continue
            if sys.le(r, s) or sys.le(s, r) or sys.le(inv[s], r):
                return False
    return True


def is_proper_in(sys: SeparationSystem, members: Iterable[int], classification: Classification | None = None) -> bool:
    members = set(members)
    if not is_proper_star(sys, members):
        return False
    if len(members) == 1:
        c = classification or classify(sys)
        (x,) = members
        return not c.cotrivial[x]
    return True


def star_le(sys: SeparationSystem, sigma: Iterable[int], tau: Iterable[int]) -> bool:
    tau = list(tau)
    return all(any(sys.le(s, t) for t in tau) for s in sigma)


# -- isomorphisms -------------------------------------------------------


def isomorphism_failures(a: SeparationSystem, b: SeparationSystem, mapping) -> list[str]:
    """Reasons why ``mapping`` (index of ``a`` -> index of ``b``) is not an isomorphism."""
    if isinstance(mapping, Mapping):
        phi = [mapping.get(i) for i in range(a.count)]
    else:
        phi = list(mapping)
    problems = []
    if len(phi) != a.count or a.count != b.count:
        return [f"size mismatch: {a.count} elements vs {b.count}"]
    if None in phi or sorted(phi) != list(range(b.count)):
        return ["map is not a bijection"]
    for i in range(a.count):
        if phi[a.inv[i]] != b.inv[phi[i]]:
            problems.append(f"involution not preserved at {i}")
        for j in range(a.count):
            if a.le(i, j) != b.le(phi[i], phi[j]):
                problems.append(f"order not preserved for ({i}, {j})")
    return problems


def is_isomorphism(a: SeparationSystem, b: SeparationSystem, mapping) -> bool:
    return not isomorphism_failures(a, b, mapping)
