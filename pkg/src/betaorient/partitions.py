"""Vertex partitions, the partition weight function, and tree packing.

The weight of a partition P = {V_1, ..., V_t} of a graph G is

    w_G(P) = sum_i d(V_i) - 10 t + 16,

where d(V_i) counts the edges leaving V_i.  The weight w(G) of the graph is
the minimum over all partitions with at least two parts (the single-part
partition is admitted only for a one-vertex graph, where it gives 6).  For
the minimum it suffices to scan partitions whose parts induce connected
subgraphs: splitting a disconnected part lowers the weight by 10.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .multigraph import Multigraph


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint cover of the vertex set; parts keep their given order."""

    parts: tuple[frozenset[int], ...]

    @staticmethod
    def of(parts: Iterable[Iterable[int]]) -> "VertexPartition":
        return VertexPartition(tuple(frozenset(p) for p in parts))

    @staticmethod
    def trivial(n: int) -> "VertexPartition":
        return VertexPartition(tuple(frozenset({v}) for v in range(n)))

    @staticmethod
    def from_rgs(rgs: Sequence[int]) -> "VertexPartition":
        """Partition from a restricted-growth string; parts in first-use order."""
        blocks: dict[int, set[int]] = {}
        for v, b in enumerate(rgs):
            blocks.setdefault(b, set()).add(v)
        return VertexPartition.of(blocks[b] for b in sorted(blocks))

    def rgs(self) -> tuple[int, ...]:
        n = sum(len(p) for p in self.parts)
        owner = [0] * n
        order: dict[frozenset[int], int] = {}
        for part in sorted(self.parts, key=min):
            order[part] = len(order)
        for part in self.parts:
            for v in part:
                owner[v] = order[part]
        return tuple(owner)

    def part_count(self) -> int:
        return len(self.parts)

    def validate(self, vertex_count: int) -> None:
        seen: set[int] = set()
        for part in self.parts:
            if not part:
                raise ValueError("empty part")
            if part & seen:
                raise ValueError("parts are not disjoint")
            seen |= part
        if seen != set(range(vertex_count)):
            raise ValueError("parts do not cover the vertex set")
        if len(self.parts) < 2 and vertex_count > 1:
            raise ValueError("single-part partition admitted only for one vertex")


def iter_rgs(n: int, min_parts: int = 1, max_parts: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings of length n in lexicographic order."""
    if n == 0:
        return
    rgs = [0] * n

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            parts = top + 1
            if parts >= min_parts and (max_parts is None or parts <= max_parts):
                yield tuple(rgs)
            return
        limit = top + 1 if max_parts is None else min(top + 1, max_parts - 1)
        for b in range(limit + 1):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0) if n >= 1 else iter(())


def iter_partitions(
    g: Multigraph,
    min_parts: int = 2,
    max_parts: Optional[int] = None,
    connected_parts: bool = False,
) -> Iterator[VertexPartition]:
    n = g.vertex_count
    for rgs in iter_rgs(n, min_parts=min_parts, max_parts=max_parts):
        p = VertexPartition.from_rgs(rgs)
        if connected_parts and not all(g.is_connected_subset(part) for part in p.parts):
            continue
        yield p


def quotient(g: Multigraph, p: VertexPartition) -> tuple[Multigraph, tuple[int, ...], tuple[Optional[int], ...]]:
    """Identify the vertices within each part; intra-part edges are deleted.

    Quotient vertex i corresponds to part i of the partition.  Returns
    (graph, part_map, edge_map) with part_map sending old vertices to part
    indices and edge_map covering the surviving edges.
    """
    p.validate(g.vertex_count)
    part_map = [0] * g.vertex_count
    for i, part in enumerate(p.parts):
        for v in part:
            part_map[v] = i
    edge_map: list[Optional[int]] = [None] * g.edge_count
    new_edges: list[tuple[int, int]] = []
    for eid, (a, b) in enumerate(g.edges):
        na, nb = part_map[a], part_map[b]
        if na != nb:
            edge_map[eid] = len(new_edges)
            new_edges.append((na, nb))
    return Multigraph(len(p.parts), tuple(new_edges)), tuple(part_map), tuple(edge_map)


def part_degrees(g: Multigraph, p: VertexPartition) -> list[int]:
    owner = [0] * g.vertex_count
    for i, part in enumerate(p.parts):
        for v in part:
            owner[v] = i
    deg = [0] * len(p.parts)
    for a, b in g.edges:
        if owner[a] != owner[b]:
            deg[owner[a]] += 1
            deg[owner[b]] += 1
    return deg


def partition_weight(g: Multigraph, p: VertexPartition) -> int:
    """sum_i d(V_i) - 10 t + 16; always even."""
    p.validate(g.vertex_count)
    w = sum(part_degrees(g, p)) - 10 * p.part_count() + 16
    assert w % 2 == 0, "partition weight must be even"
    return w


def graph_weight(g: Multigraph) -> tuple[int, VertexPartition]:
    """Minimum partition weight with a lexicographically least minimizer.

    The scan is restricted to partitions with connected parts, which is
    lossless for the minimum; ties are broken by restricted-growth-string
    order.  A one-vertex graph has weight 6 (single-part formula value).
    """
    n = g.vertex_count
    if n == 0:
        raise ValueError("weight undefined for the empty graph")
    if n == 1:
        return 6, VertexPartition.of([{0}])
    best: Optional[int] = None
    best_p: Optional[VertexPartition] = None
    for p in iter_partitions(g, min_parts=2, connected_parts=True):
        w = partition_weight(g, p)
        if best is None or w < best:
            best, best_p = w, p
    assert best is not None and best_p is not None
    return best, best_p


def co_weight(h: Multigraph) -> int:
    """6 - w(H); 0 for a single vertex."""
    return 6 - graph_weight(h)[0]


def restored_partition(
    g: Multigraph,
    h_parts: Sequence[Iterable[int]],
    p: VertexPartition,
) -> VertexPartition:
    """Undo a contraction inside a partition of the quotient.

    ``h_parts`` are the contracted vertex sets (one per component of the
    contracted subgraph).  The quotient is the one produced by
    ``contract_components``: its vertices are the parts of {h components} +
    {singletons}, ordered by smallest original vertex.  Each quotient vertex
    inside a part of ``p`` is replaced by its originating vertex set.
    """
    sets = [frozenset(s) for s in h_parts]
    covered: set[int] = set()
    for s in sets:
        if s & covered:
            raise ValueError("contracted vertex sets overlap")
        covered |= s
    classes = sets + [frozenset({v}) for v in range(g.vertex_count) if v not in covered]
    classes.sort(key=min)
    p.validate(len(classes))
    new_parts = []
    for part in p.parts:
        merged: set[int] = set()
        for qv in part:
            merged |= classes[qv]
        new_parts.append(merged)
    return VertexPartition.of(new_parts)


def contract_components(
    g: Multigraph, h_parts: Sequence[Iterable[int]]
) -> tuple[Multigraph, tuple[int, ...], tuple[Optional[int], ...]]:
    """Quotient of g by the partition {h components} + {singletons}.

    Quotient vertices are numbered by ascending smallest original vertex, the
    same convention ``restored_partition`` assumes.
    """
    sets = [frozenset(s) for s in h_parts]
    covered: set[int] = set()
    for s in sets:
        if not s:
            raise ValueError("empty contracted set")
        if s & covered:
            raise ValueError("contracted vertex sets overlap")
        covered |= s
    classes = sets + [frozenset({v}) for v in range(g.vertex_count) if v not in covered]
    classes.sort(key=min)
    return quotient(g, VertexPartition(tuple(classes)))


def _weight_within(g: Multigraph, subset: frozenset[int], parts: Sequence[frozenset[int]]) -> int:
    """w_{G[subset]}(parts), computed without relabeling the subgraph."""
    owner: dict[int, int] = {}
    for i, part in enumerate(parts):
        for v in part:
            owner[v] = i
    deg = [0] * len(parts)
    for a, b in g.edges:
        if a in owner and b in owner and owner[a] != owner[b]:
            deg[owner[a]] += 1
            deg[owner[b]] += 1
    return sum(deg) - 10 * len(parts) + 16


def refinement_residual(
    g: Multigraph,
    p: VertexPartition,
    refinements: Sequence[VertexPartition],
    ell: int,
) -> int:
    """Defect of the refinement identity; zero for every valid input.

    ``refinements[i]`` partitions part i of ``p`` (given in original vertex
    labels).  With H_i = G[V_i] and P_ell the partition obtained by replacing
    the first ``ell`` parts with their refinements, the identity reads

        w_G(P) = sum_{i<=ell} (6 - w_{H_i}(Q_i)) + w_G(P_ell).
    """
    p.validate(g.vertex_count)
    if not (0 <= ell <= p.part_count()):
        raise ValueError("ell out of range")
    if len(refinements) < ell:
        raise ValueError("missing refinements")
    total = partition_weight(g, p)
    correction = 0
    new_parts: list[frozenset[int]] = []
    for i, part in enumerate(p.parts):
        if i < ell:
            q = refinements[i]
            if frozenset().union(*q.parts) != part:
                raise ValueError(f"refinement {i} does not cover part {i}")
            correction += 6 - _weight_within(g, part, q.parts)
            new_parts.extend(q.parts)
        else:
            new_parts.append(part)
    tail = partition_weight(g, VertexPartition(tuple(new_parts)))
    return total - correction - tail


# ---------- spanning tree packing ----------


def tree_packing_bound(g: Multigraph) -> int:
    """Largest k allowed by the partition criterion: every vertex partition
    must have at least k(t-1) crossing edges.  Connected parts suffice for the
    minimum of cross/(t-1)."""
    n = g.vertex_count
    if n < 2:
        raise ValueError("tree packing bound needs at least 2 vertices")
    if not g.is_connected():
        return 0
    best: Optional[int] = None
    for p in iter_partitions(g, min_parts=2, connected_parts=True):
        cross = sum(part_degrees(g, p)) // 2
        ratio = cross // (p.part_count() - 1)
        if best is None or ratio < best:
            best = ratio
    assert best is not None
    return best


def _forest_components(n: int, forest: set[int], edges: Sequence[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in forest:
        a, b = edges[eid]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return [find(v) for v in range(n)]


def _forest_path(n: int, forest: set[int], edges: Sequence[tuple[int, int]], s: int, t: int) -> list[int]:
    """Edge ids on the unique s-t path in the forest (assumes connected there)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
    for eid in forest:
        a, b = edges[eid]
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    prev: dict[int, tuple[int, int]] = {}
    stack = [s]
    seen = {s}
    while stack:
        v = stack.pop()
        if v == t:
            break
        for w, eid in adj[v]:
            if w not in seen:
                seen.add(w)
                prev[w] = (v, eid)
                stack.append(w)
    path = []
    v = t
    while v != s:
        v, eid = prev[v]
        path.append(eid)
    return path


def _pack_forests(g: Multigraph, k: int) -> list[set[int]]:
    """Greedy matroid-union packing of edges into k forests with augmentation."""
    n = g.vertex_count
    edges = g.edges
    forests: list[set[int]] = [set() for _ in range(k)]
    location: dict[int, int] = {}

    for e0 in range(len(edges)):
        labels: dict[int, tuple[Optional[int], Optional[int]]] = {e0: (None, None)}
        queue = [e0]
        done = False
        while queue and not done:
            e = queue.pop(0)
            a, b = edges[e]
            for i in range(k):
                if e in forests[i]:
                    continue
                comp = _forest_components(n, forests[i], edges)
                if comp[a] != comp[b]:
                    # insert e into forest i and unwind the exchange chain
                    cur, fi = e, i
                    while True:
                        if cur in location:
                            forests[location[cur]].discard(cur)
                        forests[fi].add(cur)
                        location[cur] = fi
                        pred, pred_forest = labels[cur]
                        if pred is None:
                            break
                        cur, fi = pred, pred_forest
                        assert fi is not None
                    done = True
                    break
                for f in _forest_path(n, forests[i], edges, a, b):
                    if f not in labels:
                        labels[f] = (e, i)
                        queue.append(f)
    return forests


def tree_packing_number(g: Multigraph) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Maximum number of edge-disjoint spanning trees, with the trees.

    Matroid-union augmentation; agrees with ``tree_packing_bound``.
    Disconnected inputs give 0.
    """
    n = g.vertex_count
    if n < 2:
        raise ValueError("tree packing needs at least 2 vertices")
    if not g.is_connected():
        return 0, ()
    best_forests: tuple[tuple[int, ...], ...] = ()
    k = 0
    while True:
        forests = _pack_forests(g, k + 1)
        if all(len(f) == n - 1 for f in forests):
            k += 1
            best_forests = tuple(tuple(sorted(f)) for f in forests)
        else:
            return k, best_forests
