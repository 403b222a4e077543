import itertools
import random

import pytest

from betaorient.catalog import (
    NamedPattern,
    a_k2,
    cycle_graph,
    double_k4,
    f_family_member,
    f_star,
    is_s5_contractible,
    make_named,
    n5_member,
    q_graph,
    small_contractible_closed_form,
    t_graph,
    w1_graph,
    w2_graph,
)
from betaorient.multigraph import enumerate_class, global_min_cut, isomorphic
from betaorient.partitions import VertexPartition, quotient


def test_make_named():
    g = make_named(NamedPattern("T", (1, 3, 3)))
    assert g.vertex_count == 3 and g.edge_count == 7
    g = make_named(NamedPattern("W2"))
    assert g.edge_count == 12 and sorted(g.degrees()) == [5, 5, 7, 7]
    g = make_named(NamedPattern("Q", (2, 2, 2, 2)))
    assert g.edge_count == 8 and set(g.multiplicities().values()) == {2}
    g = make_named(NamedPattern("path", (3,)))
    assert g.vertex_count == 4 and g.edge_count == 3
    with pytest.raises(ValueError):
        make_named(NamedPattern("aK2", (-1,)))


def test_n5_member():
    assert n5_member(t_graph(2, 2, 3))
    assert n5_member(t_graph(3, 1, 3))  # relabeled T133
    assert not n5_member(a_k2(4))
    assert not n5_member(t_graph(2, 3, 3))
    for name, g in (("W1", w1_graph()), ("W2", w2_graph())):
        assert n5_member(g), name


def test_f_family():
    assert f_family_member(a_k2(1), 1)
    assert f_family_member(t_graph(0, 3, 3), 1)
    assert f_family_member(t_graph(2, 2, 2), 1)
    k4d_minus, _ = double_k4().without_edges([0])
    assert f_family_member(k4d_minus, 1)
    assert f_family_member(f_star(), 2)
    assert not f_family_member(t_graph(1, 1, 3), 1)  # contains itself
    assert not f_family_member(a_k2(4), 1)
    with pytest.raises(ValueError):
        f_family_member(a_k2(1), 3)


def test_is_s5_contractible_named():
    assert is_s5_contractible(a_k2(4))[0]
    assert is_s5_contractible(q_graph(3, 3, 3, 3))[0]
    assert is_s5_contractible(t_graph(2, 3, 3))[0]
    ok, witness = is_s5_contractible(w1_graph())
    assert not ok
    assert witness["kind"] == "n5-quotient" and witness["member"] == "W1"
    assert witness["partition"].parts == VertexPartition.trivial(4).parts
    ok, witness = is_s5_contractible(a_k2(3))
    assert not ok and witness["member"] == "3K2"


def test_contractible_witness_quotient_is_in_n5():
    rng = random.Random(20)
    from conftest import random_multigraph

    for _ in range(40):
        g = random_multigraph(rng, n_max=5)
        ok, witness = is_s5_contractible(g)
        if not ok and witness["kind"] == "n5-quotient":
            q, _, _ = quotient(g, witness["partition"])
            assert n5_member(q)
        elif not ok:
            from betaorient.partitions import partition_weight

            assert partition_weight(g, witness["partition"]) == witness["weight"] < 0


def test_closed_form_cases():
    assert small_contractible_closed_form(t_graph(2, 3, 3))
    assert not small_contractible_closed_form(a_k2(3))
    assert small_contractible_closed_form(a_k2(4))
    assert not small_contractible_closed_form(w1_graph())
    assert not small_contractible_closed_form(w2_graph())
    # adding any edge to W2 makes it contractible
    for u, v in itertools.combinations(range(4), 2):
        assert small_contractible_closed_form(w2_graph().with_extra_edge(u, v))
    # mu=5 needs a reduced spanning subgraph
    g = t_graph(5, 5, 5)
    assert small_contractible_closed_form(g)
    with pytest.raises(ValueError):
        small_contractible_closed_form(cycle_graph(5, 5))


def test_contractible_implies_connectivity_and_density():
    for g in (a_k2(4), t_graph(2, 3, 3), q_graph(3, 3, 3, 3), double_k4().with_extra_edge(0, 1)):
        if is_s5_contractible(g)[0]:
            assert global_min_cut(g).size >= 4
            assert g.edge_count >= 5 * g.vertex_count - 8


def test_contractible_monotone_under_contraction_and_addition():
    corpus = [g for g in enumerate_class(4, 12, 13, mu_max=4, connected=True)]
    rng = random.Random(21)
    sample = rng.sample(corpus, 12)
    for g in sample:
        if not is_s5_contractible(g)[0]:
            continue
        u, v = rng.sample(range(4), 2)
        q, _, _ = g.contract({u, v})
        assert is_s5_contractible(q)[0]
        assert is_s5_contractible(g.with_extra_edge(u, v))[0]


def test_every_n5_member_fails_contractibility():
    for _, g in (
        ("2K2", a_k2(2)),
        ("3K2", a_k2(3)),
        ("T133", t_graph(1, 3, 3)),
        ("T223", t_graph(2, 2, 3)),
        ("W1", w1_graph()),
        ("W2", w2_graph()),
    ):
        ok, witness = is_s5_contractible(g)
        assert not ok
        assert witness["kind"] == "n5-quotient"
