import random

import pytest

from betaorient.catalog import a_k2, cycle_graph, t_graph, w1_graph, w2_graph
from betaorient.multigraph import Multigraph, isomorphic
from betaorient.partitions import (
    VertexPartition,
    co_weight,
    contract_components,
    graph_weight,
    iter_partitions,
    partition_weight,
    quotient,
    refinement_residual,
    restored_partition,
    tree_packing_bound,
    tree_packing_number,
)
from conftest import random_multigraph


def random_partition(rng: random.Random, n: int, connected_to=None) -> VertexPartition:
    while True:
        labels = [rng.randrange(n) for _ in range(n)]
        if len(set(labels)) >= 2 or n == 1:
            return VertexPartition.from_rgs(labels)


def test_partition_validation():
    with pytest.raises(ValueError):
        VertexPartition.of([{0, 1}]).validate(2)  # single part, two vertices
    with pytest.raises(ValueError):
        VertexPartition.of([{0}, {0, 1}]).validate(2)
    VertexPartition.of([{0, 1}, {2}]).validate(3)


def test_quotient():
    q, _, _ = quotient(w1_graph(), VertexPartition.of([{0, 1}, {2}, {3}]))
    assert isomorphic(q, t_graph(1, 4, 4)) is not None
    q, _, _ = quotient(cycle_graph(4, 5), VertexPartition.of([{0, 2}, {1, 3}]))
    assert isomorphic(q, a_k2(20)) is not None
    g = w2_graph()
    q, _, _ = quotient(g, VertexPartition.trivial(4))
    assert q.edges == g.edges


def test_partition_weight_values():
    # doubled pair grouped in T223: 2 * min pair-sum - 4 = 4
    g = t_graph(3, 2, 2)  # the mu=3 pair is (0,1)
    grouped = VertexPartition.of([{0, 1}, {2}])
    assert partition_weight(g, grouped) == 2 * 4 - 4
    # trivial partition: 2e - 10v + 16
    for g in (w1_graph(), t_graph(1, 3, 3), cycle_graph(4, 5)):
        assert partition_weight(g, VertexPartition.trivial(g.vertex_count)) == (
            2 * g.edge_count - 10 * g.vertex_count + 16
        )
    assert partition_weight(a_k2(3), VertexPartition.trivial(2)) == 2


def test_partition_weight_equals_quotient_formula():
    rng = random.Random(10)
    for _ in range(60):
        g = random_multigraph(rng, connected=False)
        p = random_partition(rng, g.vertex_count)
        q, _, _ = quotient(g, p)
        assert partition_weight(g, p) == 2 * q.edge_count - 10 * q.vertex_count + 16


def test_graph_weight_named_values():
    assert graph_weight(t_graph(1, 3, 3))[0] == 0
    assert graph_weight(t_graph(2, 2, 3))[0] == 0
    assert graph_weight(w1_graph())[0] == 0
    assert graph_weight(w2_graph())[0] == 0
    assert graph_weight(a_k2(3))[0] == 2
    assert graph_weight(a_k2(2))[0] == 0
    assert graph_weight(cycle_graph(4, 5))[0] == 16
    for a in range(1, 9):
        assert graph_weight(a_k2(a))[0] == 2 * a - 4
    assert graph_weight(Multigraph(1, ()))[0] == 6


def test_connected_part_restriction_is_lossless():
    rng = random.Random(11)
    for _ in range(25):
        g = random_multigraph(rng, n_max=6)
        all_min = min(
            partition_weight(g, p) for p in iter_partitions(g, min_parts=2)
        )
        assert graph_weight(g)[0] == all_min


def test_weight_monotone_under_contraction():
    rng = random.Random(12)
    for _ in range(25):
        g = random_multigraph(rng, n_min=3)
        a, b = sorted(random.Random(_).sample(range(g.vertex_count), 2))
        q, _, _ = g.contract({a, b})
        if q.vertex_count >= 2:
            assert graph_weight(q)[0] >= graph_weight(g)[0]


def test_co_weight():
    assert co_weight(Multigraph(1, ())) == 0
    assert co_weight(a_k2(3)) == 4
    assert co_weight(a_k2(2)) == 6


def test_restored_partition():
    g = w1_graph()
    h = [frozenset({0, 1})]
    q, _, _ = contract_components(g, h)
    # trivial partition of the quotient restores {0,1} + singletons
    restored = restored_partition(g, h, VertexPartition.trivial(q.vertex_count))
    assert set(restored.parts) == {frozenset({0, 1}), frozenset({2}), frozenset({3})}
    # grouping the contracted vertex with a neighbor restores the union part
    p = VertexPartition.of([{0, 1}, {2}])
    restored = restored_partition(g, h, p)
    assert frozenset({0, 1, 2}) in set(restored.parts)


def test_restored_partition_weight_identity():
    rng = random.Random(13)
    for _ in range(30):
        g = random_multigraph(rng, n_min=4)
        size = rng.randint(2, g.vertex_count - 1)
        subset = frozenset(rng.sample(range(g.vertex_count), size))
        inside = Multigraph(
            g.vertex_count,
            tuple(e for e in g.edges if e[0] in subset and e[1] in subset),
        )
        comps = [c for c in inside.components() if c <= subset]
        q, _, _ = contract_components(g, comps)
        if q.vertex_count < 2:
            continue
        p = random_partition(rng, q.vertex_count)
        restored = restored_partition(g, comps, p)
        assert partition_weight(q, p) == partition_weight(g, restored)


def test_refinement_residual_examples():
    # grouping the tripled pair of a T with a trivial refinement
    g = t_graph(3, 2, 2)
    p = VertexPartition.of([{0, 1}, {2}])
    q1 = VertexPartition.of([{0}, {1}])
    assert refinement_residual(g, p, [q1], 1) == 0
    assert refinement_residual(g, p, [], 0) == 0


def test_refinement_residual_randomized():
    rng = random.Random(14)
    for _ in range(200):
        g = random_multigraph(rng, n_max=7, connected=False)
        n = g.vertex_count
        p = random_partition(rng, n)
        refinements = []
        for part in p.parts:
            members = sorted(part)
            labels = [rng.randrange(len(members)) for _ in members]
            blocks: dict[int, set[int]] = {}
            for v, lab in zip(members, labels):
                blocks.setdefault(lab, set()).add(v)
            refinements.append(VertexPartition.of(blocks.values()))
        ell = rng.randint(0, p.part_count())
        assert refinement_residual(g, p, refinements, ell) == 0


def test_tree_packing_named():
    assert tree_packing_number(a_k2(4))[0] == 4
    k, forests = tree_packing_number(t_graph(1, 3, 3))
    assert k == 3 and len(forests) == 3
    assert tree_packing_number(cycle_graph(4, 5))[0] == 6
    assert tree_packing_number(w1_graph())[0] == 4
    # disconnected
    assert tree_packing_number(Multigraph(4, ((0, 1), (2, 3))))[0] == 0


def test_tree_packing_certificate_is_valid():
    rng = random.Random(15)
    for _ in range(25):
        g = random_multigraph(rng, n_max=6, mu_max=4)
        k, forests = tree_packing_number(g)
        assert len(forests) == k
        used: set[int] = set()
        for tree in forests:
            assert len(tree) == g.vertex_count - 1
            assert not (set(tree) & used)
            used |= set(tree)
            sub = Multigraph(g.vertex_count, tuple(g.edges[e] for e in tree))
            assert sub.is_connected()


def test_tree_packing_matches_partition_bound():
    rng = random.Random(16)
    for _ in range(60):
        g = random_multigraph(rng, n_max=6, mu_max=4, connected=False)
        assert tree_packing_number(g)[0] == tree_packing_bound(g)
