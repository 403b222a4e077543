"""Named small multigraphs and the contractibility decision procedures.

The exceptional family is

    N5 = {2K2, 3K2, T_{1,3,3}, T_{2,2,3}, W1, W2},

and a connected graph G with at least two vertices is contractibility-good
("S5-contractible") when its weight is nonnegative and no partition quotient
of G lands in N5.  For graphs on at most 4 vertices this has a closed form,
cross-checked exhaustively against the direct definition in the test suite.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .multigraph import Multigraph, canonical_form, find_pattern, isomorphic
from .partitions import VertexPartition, iter_partitions, partition_weight, quotient


@dataclass(frozen=True)
class NamedPattern:
    """A named small-graph constructor: tag plus integer parameters."""

    tag: str
    params: tuple[int, ...] = ()


def a_k2(a: int) -> Multigraph:
    if a < 0:
        raise ValueError("negative multiplicity")
    return Multigraph.from_multiplicities(2, {(0, 1): a})


def t_graph(a: int, b: int, c: int) -> Multigraph:
    """Three vertices joined by a, b, c parallel edges: (0,1)=a, (0,2)=b, (1,2)=c."""
    if min(a, b, c) < 0:
        raise ValueError("negative multiplicity")
    return Multigraph.from_multiplicities(3, {(0, 1): a, (0, 2): b, (1, 2): c})


def q_graph(a1: int, a2: int, a3: int, a4: int) -> Multigraph:
    """Four vertices in a cycle, consecutive pairs carrying a1..a4 edges."""
    if min(a1, a2, a3, a4) < 0:
        raise ValueError("negative multiplicity")
    return Multigraph.from_multiplicities(4, {(0, 1): a1, (1, 2): a2, (2, 3): a3, (0, 3): a4})


def w1_graph() -> Multigraph:
    """Hub with triple edges to three rim vertices plus the rim triangle."""
    return Multigraph.from_multiplicities(
        4, {(0, 1): 3, (0, 2): 3, (0, 3): 3, (1, 2): 1, (1, 3): 1, (2, 3): 1}
    )


def w2_graph() -> Multigraph:
    """Degrees (7,7,5,5): one triple pair, four double pairs, one single."""
    return Multigraph.from_multiplicities(
        4, {(0, 1): 3, (0, 2): 2, (0, 3): 2, (1, 2): 2, (1, 3): 2, (2, 3): 1}
    )


def double_k4() -> Multigraph:
    return Multigraph.from_multiplicities(4, {p: 2 for p in itertools.combinations(range(4), 2)})


def f_star() -> Multigraph:
    """Two doubled triangles sharing a doubled pair (2K4 minus a doubled pair)."""
    return Multigraph.from_multiplicities(
        4, {(0, 1): 2, (0, 2): 2, (1, 2): 2, (0, 3): 2, (1, 3): 2}
    )


def path_graph(k: int) -> Multigraph:
    """Path with k edges, unit multiplicities."""
    if k < 0:
        raise ValueError("negative length")
    return Multigraph(k + 1, tuple((i, i + 1) for i in range(k)))


def cycle_graph(n: int, mult: int = 1) -> Multigraph:
    """Cycle on n vertices with every slot carrying ``mult`` parallel edges."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    pairs = {(i, (i + 1) % n): mult for i in range(n)}
    return Multigraph.from_multiplicities(n, {tuple(sorted(p)): m for p, m in pairs.items()})


def make_named(p: NamedPattern) -> Multigraph:
    tag = p.tag
    if tag == "aK2":
        (a,) = p.params
        return a_k2(a)
    if tag == "T":
        return t_graph(*p.params)
    if tag == "Q":
        return q_graph(*p.params)
    if tag == "W1":
        return w1_graph()
    if tag == "W2":
        return w2_graph()
    if tag == "doubleK4":
        return double_k4()
    if tag == "Fstar":
        return f_star()
    if tag == "path":
        (k,) = p.params
        return path_graph(k)
    raise ValueError(f"unknown pattern tag {tag!r}")


def n5_members() -> list[tuple[str, Multigraph]]:
    return [
        ("2K2", a_k2(2)),
        ("3K2", a_k2(3)),
        ("T_{1,3,3}", t_graph(1, 3, 3)),
        ("T_{2,2,3}", t_graph(2, 2, 3)),
        ("W1", w1_graph()),
        ("W2", w2_graph()),
    ]


_N5_FORMS: Optional[dict[tuple[int, tuple[int, ...]], str]] = None


def _n5_forms() -> dict[tuple[int, tuple[int, ...]], str]:
    global _N5_FORMS
    if _N5_FORMS is None:
        _N5_FORMS = {canonical_form(g): name for name, g in n5_members()}
    return _N5_FORMS


def n5_member(g: Multigraph) -> bool:
    if g.vertex_count not in (2, 3, 4):
        return False
    return canonical_form(g) in _n5_forms()


def n5_name(g: Multigraph) -> Optional[str]:
    if g.vertex_count not in (2, 3, 4):
        return None
    return _n5_forms().get(canonical_form(g))


_F_FAMILY: dict[int, set[tuple[int, tuple[int, ...]]]] = {}


def _f_family_forms(k: int) -> set[tuple[int, tuple[int, ...]]]:
    """Canonical forms of the graphs obtained from {2K2, T133, T223, 2K4} by
    deleting k edges without creating a copy of T_{1,1,3}."""
    if k in _F_FAMILY:
        return _F_FAMILY[k]
    t113 = t_graph(1, 1, 3)
    forms: set[tuple[int, tuple[int, ...]]] = set()
    for source in (a_k2(2), t_graph(1, 3, 3), t_graph(2, 2, 3), double_k4()):
        for drop in itertools.combinations(range(source.edge_count), k):
            reduced, _ = source.without_edges(drop)
            if find_pattern(reduced, t113):
                continue
            forms.add(canonical_form(reduced))
    _F_FAMILY[k] = forms
    return forms


def f_family_member(g: Multigraph, k: int) -> bool:
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    return canonical_form(g) in _f_family_forms(k)


# ---------- contractibility ----------

_N5_SIGNATURES = {(2, 2), (2, 3), (3, 7), (4, 12)}  # (part count, quotient edges)


def is_s5_contractible(g: Multigraph) -> tuple[bool, Optional[dict]]:
    """Direct decision from the definition, scanning all vertex partitions.

    Returns (True, None) or (False, witness).  The witness names either a
    negative-weight partition (weight minimum over connected parts is the true
    minimum, but the quotient scan runs over all partitions so that
    disconnected parts are honored) or the first partition, in
    restricted-growth order, whose quotient lies in N5.
    """
    n = g.vertex_count
    if n < 2:
        raise ValueError("contractibility is defined for at least 2 vertices")
    if not g.is_connected():
        raise ValueError("contractibility is defined for connected graphs")
    min_w: Optional[int] = None
    min_p: Optional[VertexPartition] = None
    n5_hit: Optional[tuple[VertexPartition, str]] = None
    for p in iter_partitions(g, min_parts=2):
        w = partition_weight(g, p)
        if min_w is None or w < min_w:
            min_w, min_p = w, p
        if n5_hit is None and (p.part_count(), (w + 10 * p.part_count() - 16) // 2) in _N5_SIGNATURES:
            q, _, _ = quotient(g, p)
            name = n5_name(q)
            if name is not None:
                n5_hit = (p, name)
    assert min_w is not None and min_p is not None
    if min_w < 0:
        return False, {"kind": "negative-weight", "partition": min_p, "weight": min_w}
    if n5_hit is not None:
        p, name = n5_hit
        return False, {"kind": "n5-quotient", "partition": p, "member": name}
    return True, None


def small_contractible_closed_form(g: Multigraph) -> bool:
    """Closed-form contractibility test for graphs on at most 4 vertices.

    n=2: at least 4 edges.  n=3: at least 8 edges and minimum degree 4.
    n=4: some spanning subgraph has at least 12 edges, minimum degree 4,
    multiplicity at most 4, and is neither W1 nor W2.
    """
    n = g.vertex_count
    if n > 4:
        raise ValueError("closed form applies to at most 4 vertices")
    if n < 2:
        return False
    if n == 2:
        return g.edge_count >= 4
    if n == 3:
        return g.edge_count >= 8 and min(g.degrees()) >= 4
    if g.edge_count < 12:
        return False
    w1 = canonical_form(w1_graph())
    w2 = canonical_form(w2_graph())
    pairs = list(itertools.combinations(range(4), 2))
    mult = g.multiplicities()
    caps = [min(mult.get(p, 0), 4) for p in pairs]

    target = [0] * len(pairs)

    def feasible(idx: int, total: int) -> bool:
        if total + sum(caps[idx:]) < 12:
            return False
        if idx == len(pairs):
            sub = Multigraph.from_multiplicities(4, {p: m for p, m in zip(pairs, target) if m})
            if min(sub.degrees()) < 4:
                return False
            return canonical_form(sub) not in (w1, w2)
        for m in range(caps[idx], -1, -1):
            target[idx] = m
            if feasible(idx + 1, total + m):
                return True
        target[idx] = 0
        return False

    return feasible(0, 0)
