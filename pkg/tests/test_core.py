import oracles
import pytest
from hypothesis import given, settings
from strategies import systems, trees

from tressec.core import (
    SeparationSystem,
    build_system,
    classify,
    crossing_pairs,
    empty_system,
    essential_core,
    is_essential,
    is_isomorphism,
    is_nested,
    is_proper_in,
    is_proper_star,
    is_regular,
    is_star,
    is_tree_set,
    regularization,
    star_le,
    trivial_witnesses,
)
from tressec.errors import BadInvolution, InvolutionNotOrderReversing, NotAPoset, NotEssential
from tressec.orient import is_consistent
from tressec.treebridge import GraphTree, edge_tree_set


def p3():
    ets = edge_tree_set(GraphTree(("a", "b", "c"), (("a", "b"), ("b", "c"))))
    return ets.system, ets.index


def trivial_example():
    # 0 lies below both orientations of {2, 3}
    return build_system(4, [1, 0, 3, 2], [(0, 2), (0, 3)])


class TestBuild:
    def test_generators_gain_their_duals(self):
        sys = build_system(4, [1, 0, 3, 2], [(0, 2)])
        assert sys.relation(strict=True) == {(0, 2), (3, 1)}

    def test_degenerate_singleton(self):
        sys = build_system(1, [0])
        assert sys.count == 1 and sys.is_degenerate(0)

    def test_antisymmetry_violation(self):
        with pytest.raises(NotAPoset):
            build_system(2, [1, 0], [(0, 1), (1, 0)])

    def test_bad_involution(self):
        with pytest.raises(BadInvolution):
            build_system(3, [1, 2, 0])
        with pytest.raises(BadInvolution):
            build_system(2, [0])

    def test_raw_relation_must_reverse(self):
        with pytest.raises(InvolutionNotOrderReversing):
            SeparationSystem.from_relation(4, [1, 0, 3, 2], [(0, 2)])

    def test_restrict_requires_closed_set(self):
        sys, _ = p3()
        with pytest.raises(ValueError):
            sys.restrict([0])

    def test_equality_and_hash(self):
        a = build_system(4, [1, 0, 3, 2], [(0, 2)])
        b = build_system(4, [1, 0, 3, 2], [(3, 1)])
        assert a == b and hash(a) == hash(b)
        assert a != build_system(4, [1, 0, 3, 2])

    @given(systems())
    def test_order_reversing(self, sys):
        rel = oracles.relation_of(sys)
        assert all(((sys.inv[j], sys.inv[i]) in rel) for i, j in rel)

    @given(systems())
    def test_closure_matches_oracle(self, sys):
        strict = sys.relation(strict=True)
        assert oracles.transitive_closure(sys.count, strict) == oracles.relation_of(sys)


class TestClassify:
    def test_tree_set_has_nothing_special(self):
        sys = build_system(4, [1, 0, 3, 2], [(0, 2)])
        c = classify(sys)
        assert not any(c.small) and not any(c.trivial)

    def test_trivial_with_witness(self):
        c = classify(trivial_example())
        assert c.trivial[0] and c.small[0]
        assert c.witness[0] == (2, 3)
        assert c.cotrivial[1] and not c.trivial[1]

    def test_degenerate_is_not_trivial(self):
        c = classify(build_system(1, [0]))
        assert c.degenerate[0] and c.small[0] and not c.trivial[0]

    @given(systems())
    def test_against_definitions(self, sys):
        c = classify(sys)
        expected = oracles.classify(sys.count, sys.inv, oracles.relation_of(sys))
        assert [(c.small[i], c.trivial[i], c.degenerate[i]) for i in range(sys.count)] == expected
        for i in range(sys.count):
            if c.trivial[i]:
                assert c.small[i] and not c.trivial[sys.inv[i]]
                assert c.witness[i] == trivial_witnesses(sys, i)[0]
            if c.degenerate[i]:
                assert not c.trivial[i]


class TestNested:
    @given(trees())
    def test_edge_tree_sets_are_nested(self, tree):
        sys = edge_tree_set(tree).system
        assert is_nested(sys) and is_tree_set(sys) and is_regular(sys)

    def test_crossing_pair(self):
        sys = build_system(4, [1, 0, 3, 2])
        assert not is_nested(sys)
        assert crossing_pairs(sys) == [(0, 2)]

    def test_degenerate_singleton_is_nested(self):
        assert is_nested(build_system(1, [0]))

    @given(systems())
    def test_against_definition(self, sys):
        assert is_nested(sys) == oracles.nested(sys.count, sys.inv, oracles.relation_of(sys))


class TestEssential:
    def test_path_is_a_regular_tree_set(self):
        sys, _ = p3()
        assert is_regular(sys) and is_essential(sys) and is_tree_set(sys)

    def test_degenerate_is_inessential(self):
        sys = build_system(1, [0])
        assert not is_essential(sys) and not is_tree_set(sys)

    def test_trivial_is_inessential(self):
        assert not is_essential(trivial_example())

    def test_core_of_essential_system(self):
        sys, _ = p3()
        core, kept = essential_core(sys)
        assert kept == list(range(sys.count)) and core == sys

    def test_core_of_degenerate_singleton(self):
        core, kept = essential_core(build_system(1, [0]))
        assert core == empty_system() and kept == []

    def test_core_drops_trivial_pair(self):
        core, kept = essential_core(trivial_example())
        assert kept == [2, 3]
        assert core.count == 2 and not core.relation(strict=True)

    @given(systems())
    def test_core_is_idempotent(self, sys):
        core, _ = essential_core(sys)
        again, kept = essential_core(core)
        assert again == core and kept == list(range(core.count))
        assert is_essential(core)


class TestRegularization:
    def test_regular_input_unchanged(self):
        sys, _ = p3()
        assert regularization(sys) == sys

    def test_removes_exactly_the_small_pair(self):
        # a leaf edge of a 3-path made small
        sys, idx = p3()
        leaf = idx[("a", "b")]
        small = build_system(sys.count, sys.inv, list(sys.relation(strict=True)) + [(leaf, sys.inv[leaf])])
        assert not is_regular(small) and is_essential(small)
        diff = oracles.relation_of(small) - oracles.relation_of(regularization(small))
        assert diff == {(leaf, sys.inv[leaf])}

    def test_degenerate_rejected(self):
        with pytest.raises(NotEssential):
            regularization(build_system(1, [0]))

    @given(systems(degenerate=False))
    def test_output_is_regular(self, sys):
        core, _ = essential_core(sys)
        reg = regularization(core)
        assert is_regular(reg)
        before = oracles.relation_of(core)
        after = oracles.relation_of(reg)
        assert after == {(i, j) for i, j in before if j != core.inv[i]}


class TestStars:
    def test_empty_star(self):
        sys, _ = p3()
        assert is_star(sys, []) and is_proper_star(sys, [])

    def test_node_star_is_proper(self):
        sys, idx = p3()
        star = [idx[("a", "b")], idx[("c", "b")]]
        assert is_proper_star(sys, star)

    def test_comparable_pair_is_not_a_star(self):
        sys, idx = p3()
        assert not is_star(sys, [idx[("a", "b")], idx[("b", "c")]])

    def test_cotrivial_singleton_is_not_proper_in(self):
        sys = trivial_example()
        assert is_proper_star(sys, [1])
        assert not is_proper_in(sys, [1])
        assert is_proper_in(sys, [2])

    def test_star_le_reflexive(self):
        sys, idx = p3()
        sigma = [idx[("a", "b")], idx[("c", "b")]]
        assert star_le(sys, sigma, sigma)

    def test_star_le_not_antisymmetric_off_antichains(self):
        sys, idx = p3()
        s, t = idx[("a", "b")], idx[("b", "c")]
        sigma, tau = [s, t], [t]
        assert star_le(sys, sigma, tau) and star_le(sys, tau, sigma) and set(sigma) != set(tau)

    def test_star_le_incomparable_antichains(self):
        sys, idx = p3()
        left, right = [idx[("b", "a")]], [idx[("b", "c")]]
        assert not star_le(sys, left, right) and not star_le(sys, right, left)

    @given(systems(max_separations=4))
    @settings(max_examples=60)
    def test_stars_are_nested_and_consistent(self, sys):
        n = sys.count
        for mask in range(1 << min(n, 8)):
            members = [i for i in range(n) if mask >> i & 1]
            if is_star(sys, members):
                sub = {(a, b) for a in members for b in members}
                assert all(
                    any((x, y) in oracles.relation_of(sys) for x in (a, sys.inv[a]) for y in (b, sys.inv[b]))
                    for a, b in sub
                )
                assert is_consistent(sys, members)

    @given(trees(max_nodes=6))
    def test_star_le_antisymmetric_on_proper_stars(self, tree):
        ets = edge_tree_set(tree)
        sys = ets.system
        stars = [s for s in _small_subsets(sys.count, 3) if is_proper_star(sys, s)]
        for a in stars:
            for b in stars:
                if star_le(sys, a, b) and star_le(sys, b, a):
                    assert set(a) == set(b)


def _small_subsets(n, k):
    from itertools import combinations
    for size in range(k + 1):
        yield from combinations(range(n), size)


def test_isomorphism_checks_involution_and_order():
    sys, _ = p3()
    assert is_isomorphism(sys, sys, list(range(sys.count)))
    assert not is_isomorphism(sys, sys, [1, 0, 2, 3])


def test_two_degenerate_elements_cannot_be_nested():
    assert not is_nested(build_system(2, [0, 1]))
    # comparing them forces each below the other
    with pytest.raises(NotAPoset):
        build_system(2, [0, 1], [(0, 1)])


@given(systems())
def test_nested_systems_have_at_most_one_degenerate(sys):
    if is_nested(sys):
        assert sum(classify(sys).degenerate) <= 1
