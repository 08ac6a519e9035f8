"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Each check collects its failures instead of stopping at the first, so the
printed line reports how many instances went wrong.
"""

from __future__ import annotations

import corpus
import oracles
from tressec.bipart import (
    BipartitionFamily,
    directed_embed,
    family_as_system,
    is_ever_branching,
    orientation_embed,
    recover,
    recover_sparse,
)
from tressec.core import classify, essential_core, regularization
from tressec.errors import PremiseFailed
from tressec.generate import binary_tree, caterpillar
from tressec.graphdecomp import (
    decomposition_from_treeset,
    extract_separations,
    grid_graph,
    path_decomposition,
    path_graph,
    same_decomposition,
)
from tressec.orderbridge import canonize, treeset_from_order_tree, verify_order_roundtrip
from tressec.orient import enumerate_consistent, splitting_stars
from tressec.stree import (
    check_injective,
    check_no_facing_duplicates,
    check_order_preserving,
    essentialize,
    is_essential,
    is_over,
    stree_from_treeset,
    treeset_from_stree,
)
from tressec.treebridge import (
    GraphTree,
    edge_tree_set,
    path_tree,
    star_tree,
    verify_identity_isomorphism,
    verify_node_bijection,
)


def _run(check, items):
    failures = []
    for k, item in enumerate(items):
        try:
            problem = check(item)
        except Exception as exc:  # report, do not stop
            problem = f"{type(exc).__name__}: {exc}"
        if problem:
            failures.append((k, problem))
    return failures


def _finish(verdict, tag, what, failures, total):
    verdict(tag, not failures, f"{what}: {total - len(failures)}/{total} ok"
            + (f"; first failure {failures[0]}" if failures else ""))
    assert not failures, failures[:3]


def test_ac1_splitting_stars_are_node_stars(verdict):
    trees = corpus.trees()
    assert len(trees) == 200 and max(len(t.nodes) for t in trees) <= 12

    def check(tree):
        ets = edge_tree_set(tree)
        n = ets.system.count
        rel = oracles.edge_order(tree, ets.edge)
        if rel != oracles.relation_of(ets.system):
            return "edge order differs from the side-inclusion order"
        brute = oracles.consistent_orientations(n, ets.system.inv, rel)
        expected = set(oracles.node_stars(tree, ets.edge).values())
        from_brute = {oracles.maximal(rel, o) for o in brute}
        found = {s.star for s in splitting_stars(ets.system)}
        if not (found == from_brute == expected):
            return f"found {sorted(map(sorted, found))}, expected {sorted(map(sorted, expected))}"
        return None

    _finish(verdict, "AC1", "splitting stars of tau(T) equal the node stars (200 trees, brute force)",
            _run(check, trees), len(trees))


def test_ac2_orientations_match_nodes(verdict):
    trees = corpus.trees()

    def check(tree):
        ets = edge_tree_set(tree)
        orientations = enumerate_consistent(ets.system)
        if len(orientations) != len(tree.nodes):
            return f"{len(orientations)} orientations for {len(tree.nodes)} nodes"
        expected = {oracles.orientation_towards(tree, ets.edge, t) for t in tree.nodes}
        if set(orientations) != expected:
            return "orientations are not the node orientations"
        if not verify_identity_isomorphism(ets.system):
            return "identity isomorphism failed"
        if not verify_node_bijection(tree):
            return "node bijection failed"
        return None

    _finish(verdict, "AC2", "|O(tau(T))| = |V(T)| and both tree round trips verified",
            _run(check, trees), len(trees))


def test_ac3_order_tree_round_trip(verdict):
    posets = corpus.order_trees()
    assert len(posets) == 200 and max(len(p.elements) for p in posets) <= 8

    def check(poset):
        if not verify_order_roundtrip(poset):
            return "order round trip failed"
        ext = treeset_from_order_tree(poset)
        if oracles.relation_of(ext.system) != oracles.order_extension(poset.elements, poset.less):
            return "extension differs from the defining order"
        for o in enumerate_consistent(ext.system):
            can = canonize(ext.system, o)
            n = len(can.order_tree.elements)
            image = {can.mapping[i] for i in o}
            if image != set(range(n, 2 * n)):
                return f"orientation {sorted(o)} not mapped onto the inverses"
            rel_a = oracles.relation_of(ext.system)
            rel_b = oracles.relation_of(can.system)
            if {(can.mapping[a], can.mapping[b]) for a, b in rel_a} != rel_b:
                return "canonization does not carry the order"
            if any(can.mapping[ext.system.inv[i]] != can.system.inv[can.mapping[i]] for i in range(ext.system.count)):
                return "canonization does not commute with inversion"
        return None

    _finish(verdict, "AC3", "order tree round trip and canonization onto X* (200 order trees)",
            _run(check, posets), len(posets))


def test_ac4_orientation_embedding_is_isomorphism(verdict):
    trees = [t for t in corpus.trees() if 2 * len(t.edges) <= 14]
    assert trees

    def check(tree):
        ets = edge_tree_set(tree)
        emb = orientation_embed(ets.system)
        fam = emb.family
        if any(not a or not b for a, b in fam.pairs):
            return "empty side"
        if sorted(emb.image.values()) != list(range(ets.system.count)):
            return "f is not a bijection onto the family"
        rel = oracles.relation_of(ets.system)
        fam_rel = oracles.relation_of(family_as_system(fam))
        if {(emb.image[a], emb.image[b]) for a, b in rel} != fam_rel:
            return "f does not carry the order"
        # through the node bijection f(x,y) is the vertex bipartition of xy
        node_of = {tuple(sorted(oracles.orientation_towards(tree, ets.edge, t))): t for t in tree.nodes}
        g = oracles.as_graph(tree)
        for i, (x, y) in enumerate(ets.edge):
            a, b = fam.pairs[emb.image[i]]
            if {node_of[p] for p in a} != oracles.side(g, x, y) or {node_of[p] for p in b} != oracles.side(g, y, x):
                return f"f{(x, y)} is not the bipartition of the tree edge"
        return None

    def check_order(poset):
        sys = treeset_from_order_tree(poset).system
        emb = orientation_embed(sys)
        if any(not a or not b for a, b in emb.family.pairs):
            return "empty side"
        rel = oracles.relation_of(sys)
        fam_rel = oracles.relation_of(family_as_system(emb.family))
        if {(emb.image[a], emb.image[b]) for a, b in rel} != fam_rel:
            return "f does not carry the order"
        return None

    posets = [p for p in corpus.order_trees() if 2 * len(p.elements) <= 14]
    failures = _run(check, trees) + _run(check_order, posets)
    total = len(trees) + len(posets)
    _finish(verdict, "AC4", f"f is a tree set isomorphism with non-empty sides ({total} tree sets <= 14 elements)",
            failures, total)


def _ever_branching_cases():
    cases = []
    for n in range(3, 9):
        cases.append((f"path P_{n}", path_tree(n), False))
    for m in range(3, 8):
        cases.append((f"star with {m} leaves", star_tree(m), True))
    for depth in range(1, 4):
        cases.append((f"binary tree depth {depth}", binary_tree(depth), True))
    for legs in ([2, 0, 2], [2, 1, 0, 3], [1, 2, 2, 0, 1]):
        cases.append((f"caterpillar with legs {legs}", caterpillar(len(legs), legs), False))
    return cases


def test_ac5_sparse_embedding_injective_iff_ever_branching(verdict):
    cases = _ever_branching_cases()

    def check(case):
        name, tree, expected = case
        sys = edge_tree_set(tree).system
        injective = directed_embed(sys).injective
        branching = is_ever_branching(sys)
        oracle = oracles.degree_two_free(tree)
        if not (injective == branching == oracle == expected):
            return f"{name}: injective={injective} ever-branching={branching} degree-2-free={oracle}"
        return None

    failures = _run(check, cases)
    # the P_3 counterexample: f'((a,b)) = f'((b,c))
    p3 = GraphTree(("a", "b", "c"), (("a", "b"), ("b", "c")))
    ets = edge_tree_set(p3)
    emb = directed_embed(ets.system)
    ab, bc = ets.index[("a", "b")], ets.index[("b", "c")]
    if emb.image[ab] != emb.image[bc]:
        failures.append(("P_3", "f'((a,b)) differs from f'((b,c))"))
    _finish(verdict, "AC5", f"f' injective iff ever-branching ({len(cases)} trees) and f'((a,b)) = f'((b,c)) on P_3",
            failures, len(cases) + 1)


def _leaf_family(tree):
    g = oracles.as_graph(tree)
    leaves = tuple(t for t in tree.nodes if g.degree(t) == 1)
    ets = edge_tree_set(tree)
    pairs, g_map = [], {}
    for i, (x, y) in enumerate(ets.edge):
        a = frozenset(oracles.side(g, x, y)) & frozenset(leaves)
        b = frozenset(leaves) - a
        g_map[len(pairs)] = i
        pairs.append((a, b))
    return BipartitionFamily(leaves, tuple(pairs)), ets, g_map


def test_ac6_recovering_the_ground_set(verdict):
    failures = []
    trees = [t for t in corpus.trees() if 2 * len(t.edges) <= 14]

    def check(tree):
        sys = edge_tree_set(tree).system
        emb = orientation_embed(sys)
        g = {k: s for s, k in emb.image.items()}
        h = recover(emb.family, sys, g)
        if set(h) != set(emb.family.ground) or len(set(h.values())) != len(h):
            return "h is not a bijection"
        if set(h.values()) != set(enumerate_consistent(sys)):
            return "h misses a consistent orientation"
        for x, o in h.items():
            if frozenset(x) != o:
                return f"h({x}) = {sorted(o)}"
        return None

    failures += _run(check, trees)

    fam, _, _ = _leaf_family(star_tree(3))
    try:
        recover(fam)
        failures.append(("3-star", "recover accepted the leaf family"))
    except PremiseFailed as exc:
        if exc.which != "second":
            failures.append(("3-star", f"failed premise {exc.which!r}"))

    # u has three leaves and v, v has two leaves and u: no node of degree 2
    t7 = GraphTree(
        ("u", "v", "l1", "l2", "l3", "l4", "l5"),
        (("u", "v"), ("u", "l1"), ("u", "l2"), ("u", "l3"), ("v", "l4"), ("v", "l5")),
    )
    fam, ets, g_map = _leaf_family(t7)
    try:
        h = recover_sparse(fam, ets.system, g_map)
        for leaf, o in h.items():
            if o != oracles.orientation_towards(t7, ets.edge, leaf):
                failures.append(("7-node", f"h({leaf}) is not the orientation towards it"))
        if set(h) != set(fam.ground):
            failures.append(("7-node", "some leaf was not matched"))
    except Exception as exc:
        failures.append(("7-node", f"{type(exc).__name__}: {exc}"))

    _finish(verdict, "AC6", f"recover on {len(trees)} embeddings, PremiseFailed(second) on the 3-star leaves, "
            "recover_sparse on a 7-node degree-2-free tree", failures, len(trees) + 2)


def test_ac7_essentialization_pipeline(verdict):
    items = corpus.strees()
    assert len(items) == 200
    assert max(r.stree.host.count for r in items) <= 20
    assert max(len(r.stree.tree.nodes) for r in items) <= 10
    injected = sum(1 for r in items if r.planted.trivial) and sum(
        1 for r in items if len(r.stree.tree.nodes) > len(r.planted.tree.nodes) + len(r.planted.trivial))
    assert injected, "generator did not inject trivial labels and redundancy"

    def check(rs):
        out, core = essentialize(rs.stree, rs.family)
        if not is_essential(out):
            return "output is not essential"
        check_injective(out)
        report = check_order_preserving(out)
        c = classify(out.host)
        small_edges = sum(1 for s in out.alpha.values() if c.small[s])
        # only the two orientations of a small-labelled edge may use an exception
        if report.exceptions != {"small": small_edges, "trivial_e": 0, "trivial_f": 0}:
            return f"unexpected exceptions {report.exceptions}"
        if check_no_facing_duplicates(out):
            return "facing duplicates in an essential S-tree"
        if not is_over(out, core):
            return "output is not over the essential core of F"
        return None

    _finish(verdict, "AC7", "prune/tighten/essentialize on 200 random S-trees over stars",
            _run(check, items), len(items))


def test_ac8_stree_round_trip(verdict):
    items = corpus.nested_systems()
    assert len(items) == 100

    def check(ps):
        sys = ps.system
        st = stree_from_treeset(sys, {s.star for s in splitting_stars(sys)})
        img = treeset_from_stree(st)
        core, kept = essential_core(sys)
        reg = regularization(core)
        if img.host_indices != kept:
            return "image elements differ from the essential core"
        if img.regularized != reg:
            return "image order differs from the regularized core"
        if oracles.relation_of(img.regularized) != oracles.relation_of(reg):
            return "relations differ"
        return None

    _finish(verdict, "AC8", "stree round trip reproduces the regularized essential core (100 nested systems)",
            _run(check, items), len(items))


def _grid_cases():
    g = grid_graph(3, 3)
    order = sorted(g.vertices)
    rows = path_decomposition(g, [order[k:k + 4] for k in range(6)])
    g2 = grid_graph(3, 4)

    def col(c):
        return {(r, c) for r in range(3)}

    cols = path_decomposition(g2, [col(0) | col(1), col(1) | col(2), col(2) | col(3)])
    return [("3x3 grid row-major path", rows), ("3x4 grid column pairs", cols)]


def test_ac9_decomposition_round_trip(verdict):
    cases = [(f"P_{n}", path_decomposition(path_graph(n), [{i, i + 1} for i in range(n - 1)])) for n in range(2, 11)]
    cases += _grid_cases()

    def check(case):
        name, td = case
        induced = extract_separations(td)
        rebuilt = decomposition_from_treeset(td.graph, induced.separations)
        if not same_decomposition(td, rebuilt):
            return f"{name}: parts {rebuilt.parts}"
        if sorted(map(sorted, rebuilt.parts.values())) != sorted(map(sorted, td.parts.values())):
            return f"{name}: parts differ as a collection"
        return None

    _finish(verdict, "AC9", f"extract then rebuild reproduces the parts ({len(cases)} decompositions)",
            _run(check, cases), len(cases))


def test_ac10_backtracking_matches_brute_force(verdict):
    systems = [edge_tree_set(t).system for t in corpus.trees()]
    systems += [ps.system for ps in corpus.nested_systems()]
    systems += list(corpus.general_systems())
    systems += [treeset_from_order_tree(p).system for p in corpus.order_trees()]
    systems = [s for s in systems if len(s.separations()) <= 16]
    assert any(len(s.separations()) == 16 for s in systems)

    def check(sys):
        rel = oracles.relation_of(sys)
        brute = oracles.consistent_orientations(sys.count, sys.inv, rel)
        found = enumerate_consistent(sys)
        if len(found) != len(set(found)) or set(found) != brute:
            return f"{len(found)} found, {len(brute)} by brute force"
        return None

    _finish(verdict, "AC10", f"backtracking equals brute force on {len(systems)} systems with |S| <= 16",
            _run(check, systems), len(systems))

