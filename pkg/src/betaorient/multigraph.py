"""Loopless multigraphs with identity-bearing parallel edges.

Edges carry dense integer ids 0..m-1 so that orientations and flow
certificates can address each parallel edge individually.  All values are
immutable; every structural edit returns a fresh graph together with explicit
vertex/edge maps wherever relabeling happens.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class Multigraph:
    """An undirected multigraph without loops.

    ``edges[i]`` is the unordered endpoint pair of the edge with id ``i``.
    The stored endpoint order is immaterial for graph semantics but is kept
    stable so that orientations can name a tail and a head per edge id.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex_count must be nonnegative")
        for eid, (a, b) in enumerate(self.edges):
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge {eid} endpoint out of range: ({a}, {b})")
            if a == b:
                raise ValueError(f"edge {eid} is a loop at vertex {a}")

    # ---------- basic queries ----------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        """Number of edge-ends at v (parallel edges each count once per end)."""
        if not (0 <= v < self.vertex_count):
            raise ValueError(f"vertex {v} out of range")
        return sum(1 for a, b in self.edges if a == v or b == v)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def multiplicity(self, u: int, v: int) -> int:
        """Number of parallel edges between u and v."""
        if u == v:
            raise ValueError("multiplicity undefined for equal vertices")
        return sum(1 for a, b in self.edges if {a, b} == {u, v})

    def max_multiplicity(self) -> int:
        return max(self.multiplicities().values(), default=0)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        """Multiplicity per unordered pair, keyed (min, max); zero pairs omitted."""
        out: dict[tuple[int, int], int] = {}
        for a, b in self.edges:
            key = (a, b) if a < b else (b, a)
            out[key] = out.get(key, 0) + 1
        return out

    def bundle_edge_ids(self) -> dict[tuple[int, int], list[int]]:
        """Edge ids grouped by unordered endpoint pair, ids ascending."""
        out: dict[tuple[int, int], list[int]] = {}
        for eid, (a, b) in enumerate(self.edges):
            key = (a, b) if a < b else (b, a)
            out.setdefault(key, []).append(eid)
        return out

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def cut_size(self, side: Iterable[int]) -> int:
        s = set(side)
        return sum(1 for a, b in self.edges if (a in s) != (b in s))

    def components(self) -> list[frozenset[int]]:
        """Connected components, each sorted by smallest member, in that order."""
        adj = self.adjacency()
        seen = [False] * self.vertex_count
        comps = []
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = {start}
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_connected_subset(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if not s:
            return False
        adj = self.adjacency()
        start = next(iter(s))
        stack = [start]
        seen = {start}
        while stack:
            v = stack.pop()
            for w in adj[v] & s:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == s

    # ---------- constructors ----------

    @staticmethod
    def from_multiplicities(n: int, mult: dict[tuple[int, int], int]) -> "Multigraph":
        """Build a graph with edge ids assigned bundle by bundle in pair order."""
        edges: list[tuple[int, int]] = []
        for (u, v), m in sorted((tuple(sorted(p)), m) for p, m in mult.items()):
            if m < 0:
                raise ValueError("negative multiplicity")
            edges.extend([(u, v)] * m)
        return Multigraph(n, tuple(edges))

    def with_extra_edge(self, u: int, v: int) -> "Multigraph":
        return Multigraph(self.vertex_count, self.edges + ((u, v),))

    def without_edges(self, drop: Iterable[int]) -> tuple["Multigraph", tuple[Optional[int], ...]]:
        """Delete the given edge ids; survivors are renumbered densely in order."""
        dropset = set(drop)
        edge_map: list[Optional[int]] = [None] * len(self.edges)
        kept: list[tuple[int, int]] = []
        for eid, e in enumerate(self.edges):
            if eid not in dropset:
                edge_map[eid] = len(kept)
                kept.append(e)
        return Multigraph(self.vertex_count, tuple(kept)), tuple(edge_map)

    # ---------- structural edits ----------

    def contract(self, subset: Iterable[int]) -> tuple["Multigraph", tuple[int, ...], tuple[Optional[int], ...]]:
        """Merge a vertex set to one vertex, deleting the edges inside it.

        Returns (graph, vertex_map, edge_map); vertex_map sends old vertices to
        new ids, edge_map sends surviving edge ids to their new ids (None for
        deleted edges).  New vertex ids follow ascending order of each class
        representative (min element of the merged set, the vertex itself
        otherwise).
        """
        s = set(subset)
        if not s:
            raise ValueError("contract needs a nonempty vertex set")
        if any(v < 0 or v >= self.vertex_count for v in s):
            raise ValueError("contract vertex out of range")
        rep = min(s)
        reps = sorted({rep} | (set(range(self.vertex_count)) - s))
        new_id = {r: i for i, r in enumerate(reps)}
        vertex_map = tuple(new_id[rep if v in s else v] for v in range(self.vertex_count))
        edge_map: list[Optional[int]] = [None] * len(self.edges)
        new_edges: list[tuple[int, int]] = []
        for eid, (a, b) in enumerate(self.edges):
            na, nb = vertex_map[a], vertex_map[b]
            if na != nb:
                edge_map[eid] = len(new_edges)
                new_edges.append((na, nb))
        return Multigraph(len(reps), tuple(new_edges)), vertex_map, tuple(edge_map)

    def induced_subgraph(self, subset: Iterable[int]) -> tuple["Multigraph", tuple[Optional[int], ...]]:
        """Subgraph on a vertex set; vertices are relabeled in ascending order.

        Returns (graph, edge_map) where edge_map sends old edge ids to new ids
        (None for edges with an endpoint outside the set).
        """
        s = sorted(set(subset))
        if any(v < 0 or v >= self.vertex_count for v in s):
            raise ValueError("induced_subgraph vertex out of range")
        new_id = {v: i for i, v in enumerate(s)}
        edge_map: list[Optional[int]] = [None] * len(self.edges)
        new_edges: list[tuple[int, int]] = []
        for eid, (a, b) in enumerate(self.edges):
            if a in new_id and b in new_id:
                edge_map[eid] = len(new_edges)
                new_edges.append((new_id[a], new_id[b]))
        return Multigraph(len(s), tuple(new_edges)), tuple(edge_map)


@dataclass(frozen=True)
class LiftStep:
    """Replayable record of one path lifting.

    ``path`` is the vertex sequence v0..vn in the graph the lift was applied
    to, ``edge_ids`` the consumed edges (one per consecutive pair),
    ``new_edge_id`` the id of the added v0-vn edge in the resulting graph, and
    ``edge_map`` the dense renumbering of the surviving edges.
    """

    path: tuple[int, ...]
    edge_ids: tuple[int, ...]
    new_edge_id: int
    edge_map: tuple[Optional[int], ...]


def apply_lift(g: Multigraph, path: Sequence[int], edge_ids: Optional[Sequence[int]] = None) -> tuple[Multigraph, LiftStep]:
    """Lift the path v0..vn: delete its edges and add one new v0-vn edge.

    When ``edge_ids`` is omitted the lowest-id parallel edge of each
    consecutive pair is consumed.  The endpoints keep their degrees; every
    internal vertex loses exactly two edge-ends.
    """
    path = tuple(path)
    if len(path) < 2:
        raise ValueError("a lifted path needs at least one edge")
    if path[0] == path[-1]:
        raise ValueError("lifting a closed path would create a loop")
    if len(set(path)) != len(path):
        raise ValueError("lifted path must have distinct vertices")
    if edge_ids is None:
        chosen: list[int] = []
        used: set[int] = set()
        for u, v in zip(path, path[1:]):
            eid = next(
                (i for i, (a, b) in enumerate(g.edges) if {a, b} == {u, v} and i not in used),
                None,
            )
            if eid is None:
                raise ValueError(f"no available edge between {u} and {v}")
            chosen.append(eid)
            used.add(eid)
        edge_ids = chosen
    edge_ids = tuple(edge_ids)
    if len(edge_ids) != len(path) - 1 or len(set(edge_ids)) != len(edge_ids):
        raise ValueError("edge_ids must list one distinct edge per path step")
    for (u, v), eid in zip(zip(path, path[1:]), edge_ids):
        if set(g.edges[eid]) != {u, v}:
            raise ValueError(f"edge {eid} does not join {u} and {v}")
    stripped, edge_map = g.without_edges(edge_ids)
    lifted = stripped.with_extra_edge(path[0], path[-1])
    step = LiftStep(path=path, edge_ids=edge_ids, new_edge_id=lifted.edge_count - 1, edge_map=edge_map)
    return lifted, step


def lift_path(g: Multigraph, path: Sequence[int], edge_ids: Optional[Sequence[int]] = None) -> Multigraph:
    return apply_lift(g, path, edge_ids)[0]


# ---------- cuts ----------


@dataclass(frozen=True)
class EdgeCutWitness:
    """One side of an edge cut together with the number of crossing edges."""

    side: frozenset[int]
    size: int


def global_min_cut(g: Multigraph) -> EdgeCutWitness:
    """Minimum edge cut, by Stoer-Wagner on the multiplicity-weighted skeleton.

    Disconnected inputs report size 0 with one component as witness.
    """
    n = g.vertex_count
    if n < 2:
        raise ValueError("min cut needs at least 2 vertices")
    comps = g.components()
    if len(comps) > 1:
        return EdgeCutWitness(comps[0], 0)

    weight: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for (u, v), m in g.multiplicities().items():
        weight[u][v] = m
        weight[v][u] = m
    groups: dict[int, set[int]] = {v: {v} for v in range(n)}
    active = sorted(weight)
    best: Optional[EdgeCutWitness] = None
    while len(active) > 1:
        # maximum adjacency order; ties broken by smallest vertex id
        start = active[0]
        in_a = {start}
        w = {v: weight[start].get(v, 0) for v in active if v != start}
        order = [start]
        while len(in_a) < len(active):
            nxt = max(w, key=lambda v: (w[v], -v))
            order.append(nxt)
            in_a.add(nxt)
            del w[nxt]
            for v, m in weight[nxt].items():
                if v in w:
                    w[v] += m
        t = order[-1]
        s = order[-2]
        phase_cut = sum(weight[t].values())
        if best is None or phase_cut < best.size:
            best = EdgeCutWitness(frozenset(groups[t]), phase_cut)
        # merge t into s
        groups[s] |= groups.pop(t)
        for v, m in list(weight[t].items()):
            if v == s:
                continue
            weight[s][v] = weight[s].get(v, 0) + m
            weight[v][s] = weight[s][v]
        for v in weight[t]:
            weight[v].pop(t, None)
        del weight[t]
        active.remove(t)
    assert best is not None
    return best


def essential_edge_connectivity(g: Multigraph) -> Optional[int]:
    """Minimum d(X) over cuts with both sides of size >= 2; None if no such cut."""
    n = g.vertex_count
    if n < 4:
        return None
    if n > 20:
        raise ValueError("essential connectivity is exhaustive; vertex_count too large")
    best: Optional[int] = None
    for mask in range(1, 1 << (n - 1)):
        side = {0} | {v for v in range(1, n) if mask & (1 << (v - 1))}
        if len(side) < 2 or n - len(side) < 2:
            continue
        c = g.cut_size(side)
        if best is None or c < best:
            best = c
    return best


# ---------- isomorphism, canonical forms, enumeration ----------

CANONICAL_VERTEX_LIMIT = 8


def _mult_matrix(g: Multigraph) -> list[list[int]]:
    n = g.vertex_count
    mm = [[0] * n for _ in range(n)]
    for a, b in g.edges:
        mm[a][b] += 1
        mm[b][a] += 1
    return mm


def upper_triangular_vector(g: Multigraph) -> tuple[int, ...]:
    """Multiplicities in row-major upper-triangular order for the labeling as-is."""
    mm = _mult_matrix(g)
    n = g.vertex_count
    return tuple(mm[i][j] for i in range(n) for j in range(i + 1, n))

def canonical_form(g: Multigraph) -> tuple[int, tuple[int, ...]]:
    """Lexicographically least upper-triangular multiplicity vector over all
    vertex permutations, paired with the vertex count.

    Full permutation minimization; intended for small graphs (n <= 8).
    """
    n = g.vertex_count
    if n > CANONICAL_VERTEX_LIMIT:
        raise ValueError("canonical_form is factorial; vertex_count too large")
    if n <= 1:
        return (n, ())
    mm = _mult_matrix(g)
    best: Optional[tuple[int, ...]] = None
    for perm in itertools.permutations(range(n)):
        vec: list[int] = []
        abort = False
        pos = 0
        for i in range(n):
            for j in range(i + 1, n):
                val = mm[perm[i]][perm[j]]
                if best is not None:
                    if val > best[pos]:
                        abort = True
                        break
                    if val < best[pos]:
                        best = None  # strictly better prefix; finish freely
                vec.append(val)
                pos += 1
            if abort:
                break
        if not abort:
            best = tuple(vec)
    assert best is not None
    return (n, best)


def graph_key(g: Multigraph) -> str:
    """Stable identity string: canonical for small graphs, labeled otherwise."""
    if g.vertex_count <= CANONICAL_VERTEX_LIMIT:
        n, vec = canonical_form(g)
        return f"c:{n}:" + ",".join(map(str, vec))
    return f"l:{g.vertex_count}:" + ",".join(f"{a}-{b}" for a, b in sorted(tuple(sorted(e)) for e in g.edges))


def from_canonical(n: int, vec: Sequence[int]) -> Multigraph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Multigraph.from_multiplicities(n, {p: m for p, m in zip(pairs, vec) if m})


def isomorphic(g: Multigraph, h: Multigraph) -> Optional[tuple[int, ...]]:
    """A multiplicity-preserving vertex bijection g -> h, or None.

    Deterministic: the lexicographically least bijection is returned.  Meant
    for small graphs (n <= 10).
    """
    n = g.vertex_count
    if n != h.vertex_count or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    if sorted(g.multiplicities().values()) != sorted(h.multiplicities().values()):
        return None
    gm = _mult_matrix(g)
    hm = _mult_matrix(h)
    gdeg = g.degrees()
    hdeg = h.degrees()
    mapping: list[int] = []
    used = [False] * n

    def place(i: int) -> bool:
        if i == n:
            return True
        for cand in range(n):
            if used[cand] or hdeg[cand] != gdeg[i]:
                continue
            if all(gm[i][j] == hm[cand][mapping[j]] for j in range(i)):
                used[cand] = True
                mapping.append(cand)
                if place(i + 1):
                    return True
                mapping.pop()
                used[cand] = False
        return False

    return tuple(mapping) if place(0) else None


def find_pattern(g: Multigraph, pattern: Multigraph, induced: bool = False) -> list[tuple[int, ...]]:
    """Occurrences of a small pattern, one embedding per image vertex set.

    In subgraph mode an embedding is a vertex injection under which every
    pattern multiplicity is <= the host multiplicity; induced mode requires
    equality (including zero pairs).  Occurrences that differ only in how the
    pattern lands on the same host vertices are collapsed; the
    lexicographically least injection represents each image set.
    """
    p = pattern.vertex_count
    if p > 5:
        raise ValueError("find_pattern supports patterns with at most 5 vertices")
    if p == 0:
        return []
    n = g.vertex_count
    if p > n:
        return []
    gm = _mult_matrix(g)
    pm = _mult_matrix(pattern)
    found: dict[frozenset[int], tuple[int, ...]] = {}
    mapping: list[int] = []
    used = [False] * n

    def place(i: int) -> None:
        if i == p:
            img = frozenset(mapping)
            key = tuple(mapping)
            if img not in found or key < found[img]:
                found[img] = key
            return
        for cand in range(n):
            if used[cand]:
                continue
            ok = True
            for j in range(i):
                mg = gm[cand][mapping[j]]
                mp = pm[i][j]
                if (induced and mg != mp) or (not induced and mg < mp):
                    ok = False
                    break
            if ok:
                used[cand] = True
                mapping.append(cand)
                place(i + 1)
                mapping.pop()
                used[cand] = False

    place(0)
    return [found[img] for img in sorted(found, key=lambda s: sorted(s))]


def enumerate_class(
    n: int,
    e_min: int,
    e_max: Optional[int],
    mu_max: Optional[int] = None,
    delta_min: int = 0,
    connected: bool = False,
) -> list[Multigraph]:
    """One canonical representative per isomorphism class within the bounds.

    Canonical form is full permutation minimization of the upper-triangular
    multiplicity vector; representatives are returned in ascending canonical
    order.
    """
    if n > 5:
        raise ValueError("enumerate_class supports n <= 5")
    if e_max is None and mu_max is None:
        raise ValueError("unbounded edge count with no multiplicity cap")
    if n <= 1:
        if e_min <= 0 and delta_min <= 0:
            return [Multigraph(n, ())]
        return []
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    cap = mu_max if mu_max is not None else e_max
    assert cap is not None
    if e_max is None:
        e_max = cap * len(pairs)

    seen: set[tuple[int, ...]] = set()
    vec = [0] * len(pairs)

    def rec(idx: int, total: int) -> None:
        if total > e_max:
            return
        remaining = len(pairs) - idx
        if total + remaining * cap < e_min:
            return
        if idx == len(pairs):
            graph = from_canonical(n, vec)
            if total < e_min:
                return
            if delta_min and min(graph.degrees(), default=0) < delta_min:
                return
            if connected and not graph.is_connected():
                return
            seen.add(canonical_form(graph)[1])
            return
        for m in range(cap + 1):
            vec[idx] = m
            rec(idx + 1, total + m)
        vec[idx] = 0

    rec(0, 0)
    return [from_canonical(n, v) for v in sorted(seen)]
