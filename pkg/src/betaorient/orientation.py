"""Boundaries, beta-orientations, and modular flow certificates.

A boundary assigns each vertex a residue mod an odd k >= 3, summing to zero.
An orientation D satisfies a boundary beta when d^+(v) - d^-(v) = beta(v)
mod k at every vertex.  For a bundle of m parallel edges between u and v in
which y edges point u -> v, the contribution to u's imbalance is 2y - m (and
its negative at v), so the search runs over one variable per bundle: the
per-edge assignment within a bundle is a pure symmetry.  Bundles are ordered
by decreasing endpoint-degree sum (ties by smallest edge id), and a bundle
value is pruned unless both endpoints can still reach their residue: with r
undecided ends and current imbalance c at a vertex, some s in {-r, -r+2,
..., r} must satisfy c + s = beta(v) mod k, which holds iff
(beta(v) - c + r) / 2 mod k <= r (2 is invertible, k odd).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .multigraph import LiftStep, Multigraph
from .partitions import contract_components


class BudgetExhausted(RuntimeError):
    """Search ran out of node budget; distinguishes 'unknown' from 'absent'."""

    def __init__(self, message: str, context: Optional[dict] = None):
        super().__init__(message)
        self.context = context or {}


@dataclass(frozen=True)
class Boundary:
    """Per-vertex residues mod an odd k >= 3, summing to 0 mod k."""

    k: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 3 or self.k % 2 == 0:
            raise ValueError("modulus must be an odd integer >= 3")
        if any(not (0 <= b < self.k) for b in self.values):
            raise ValueError("boundary values must lie in 0..k-1")
        if sum(self.values) % self.k != 0:
            raise ValueError("boundary values must sum to 0 mod k")

    @staticmethod
    def zero(n: int, k: int) -> "Boundary":
        return Boundary(k, (0,) * n)

    @staticmethod
    def of(values: Iterable[int], k: int) -> "Boundary":
        return Boundary(k, tuple(v % k for v in values))


@dataclass(frozen=True)
class Orientation:
    """Per-edge direction, aligned with edge ids: arcs[i] = (tail, head)."""

    arcs: tuple[tuple[int, int], ...]

    def imbalances(self, n: int) -> list[int]:
        """Integer out-degree minus in-degree per vertex."""
        out = [0] * n
        for tail, head in self.arcs:
            out[tail] += 1
            out[head] -= 1
        return out

    def reversed_edge(self, eid: int) -> "Orientation":
        arcs = list(self.arcs)
        tail, head = arcs[eid]
        arcs[eid] = (head, tail)
        return Orientation(tuple(arcs))


@dataclass(frozen=True)
class ModularFlowCert:
    """Flow values mod k on an orientation; circular or antisymmetric kind.

    Circular kind (p, q): every value lies in q..p-q with k = p.
    Antisymmetric kind: no value is 0 and no two used values sum to 0 mod k.
    """

    orientation: Orientation
    k: int
    values: tuple[int, ...]
    kind: tuple

    def conserves(self, g: Multigraph) -> bool:
        net = [0] * g.vertex_count
        for (tail, head), f in zip(self.orientation.arcs, self.values):
            net[tail] += f
            net[head] -= f
        return all(x % self.k == 0 for x in net)

    def verify(self, g: Multigraph) -> bool:
        if len(self.values) != g.edge_count or len(self.orientation.arcs) != g.edge_count:
            return False
        if not _arcs_match(g, self.orientation):
            return False
        if not self.conserves(g):
            return False
        if self.kind[0] == "circular":
            _, p, q = self.kind
            return p == self.k and all(q <= f <= p - q for f in self.values)
        if self.kind[0] == "antisymmetric":
            used = set(self.values)
            if 0 in used:
                return False
            return all((x + y) % self.k != 0 for x in used for y in used)
        return False


def _arcs_match(g: Multigraph, d: Orientation) -> bool:
    if len(d.arcs) != g.edge_count:
        return False
    return all(set(arc) == set(e) and arc[0] != arc[1] for arc, e in zip(d.arcs, g.edges))


def verify_beta_orientation(g: Multigraph, d: Orientation, beta: Boundary) -> bool:
    """True iff d covers E(G) and hits beta's residue at every vertex."""
    if len(beta.values) != g.vertex_count:
        raise ValueError("boundary length does not match the graph")
    if not _arcs_match(g, d):
        return False
    return all(
        imb % beta.k == beta.values[v]
        for v, imb in enumerate(d.imbalances(g.vertex_count))
    )


@dataclass
class _Bundle:
    u: int
    v: int
    mult: int
    edge_ids: tuple[int, ...]


def _bundles_in_search_order(g: Multigraph) -> list[_Bundle]:
    deg = g.degrees()
    bundles = [
        _Bundle(u, v, len(ids), tuple(ids))
        for (u, v), ids in g.bundle_edge_ids().items()
    ]
    bundles.sort(key=lambda b: (-(deg[b.u] + deg[b.v]), b.edge_ids[0]))
    return bundles


def find_beta_orientation(
    g: Multigraph, beta: Boundary, budget: Optional[int] = None
) -> Optional[Orientation]:
    """A verified beta-orientation, or None when none exists.

    The search is exhaustive up to the within-bundle symmetry, so None is a
    proof of absence.  Components are solved independently; a component whose
    boundary values do not sum to 0 mod k admits no orientation.  ``budget``
    caps the number of bundle-value trials; exceeding it raises
    BudgetExhausted.
    """
    n = g.vertex_count
    k = beta.k
    if len(beta.values) != n:
        raise ValueError("boundary length does not match the graph")
    for comp in g.components():
        if sum(beta.values[v] for v in comp) % k != 0:
            return None

    bundles = _bundles_in_search_order(g)
    inv2 = pow(2, -1, k)
    imbalance = [0] * n
    remaining = [0] * n
    for b in bundles:
        remaining[b.u] += b.mult
        remaining[b.v] += b.mult

    def feasible(v: int) -> bool:
        j0 = ((beta.values[v] - imbalance[v] + remaining[v]) * inv2) % k
        return j0 <= remaining[v]

    nodes = 0
    choice: list[int] = [0] * len(bundles)

    def search(idx: int) -> bool:
        nonlocal nodes
        if idx == len(bundles):
            return all(imbalance[v] % k == beta.values[v] for v in range(n))
        b = bundles[idx]
        remaining[b.u] -= b.mult
        remaining[b.v] -= b.mult
        for y in range(b.mult + 1):
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExhausted(
                    "orientation search budget exhausted",
                    {"nodes": nodes, "beta": beta.values},
                )
            contrib = 2 * y - b.mult
            imbalance[b.u] += contrib
            imbalance[b.v] -= contrib
            if feasible(b.u) and feasible(b.v) and search(idx + 1):
                choice[idx] = y
                return True
            imbalance[b.u] -= contrib
            imbalance[b.v] += contrib
        remaining[b.u] += b.mult
        remaining[b.v] += b.mult
        return False

    if not search(0):
        return None
    arcs: list[tuple[int, int]] = [(0, 0)] * g.edge_count
    for b, y in zip(bundles, choice):
        for pos, eid in enumerate(b.edge_ids):
            arcs[eid] = (b.u, b.v) if pos < y else (b.v, b.u)
    d = Orientation(tuple(arcs))
    assert verify_beta_orientation(g, d, beta)
    return d


def iter_boundaries(n: int, k: int) -> Iterable[Boundary]:
    """All boundaries in odometer order over vertices 0..n-2 (last determined)."""
    if n == 0:
        yield Boundary(k, ())
        return
    for head in itertools.product(range(k), repeat=n - 1):
        last = (-sum(head)) % k
        yield Boundary(k, head + (last,))


def is_strongly_zk(
    g: Multigraph, k: int, budget: Optional[int] = None
) -> tuple[bool, Optional[Boundary]]:
    """Whether every boundary admits an orientation; witness on failure.

    Boundaries are scanned in odometer order and the first failure is the
    witness, so witnesses are reproducible.  A disconnected graph always fails
    (a boundary can concentrate opposite residues on different components).
    """
    n = g.vertex_count
    if n <= 1:
        return True, None
    comps = g.components()
    if len(comps) > 1:
        values = [0] * n
        values[min(comps[0])] = 1
        values[min(comps[1])] = k - 1
        return False, Boundary.of(values, k)
    for beta in iter_boundaries(n, k):
        if find_beta_orientation(g, beta, budget) is None:
            return False, beta
    return True, None


def mod_orientation(g: Multigraph, k: int, budget: Optional[int] = None) -> Optional[Orientation]:
    """Orientation with every imbalance divisible by k (beta identically 0)."""
    return find_beta_orientation(g, Boundary.zero(g.vertex_count, k), budget)


def circular_flow_cert(
    g: Multigraph, t: int, budget: Optional[int] = None
) -> Optional[ModularFlowCert]:
    """Modular certificate for a circular (2t+1)/t-flow.

    The certificate pairs a modulo-(2t+1) orientation with the constant value
    t on every arc; conservation then reads t*(d^+ - d^-) = 0 mod 2t+1.
    """
    if t < 1:
        raise ValueError("t must be a positive integer")
    k = 2 * t + 1
    d = mod_orientation(g, k, budget)
    if d is None:
        return None
    cert = ModularFlowCert(d, k, (t,) * g.edge_count, ("circular", k, t))
    assert cert.verify(g)
    return cert


def asf_cert(
    g: Multigraph, d: Orientation, budget: Optional[int] = None
) -> Optional[ModularFlowCert]:
    """Antisymmetric mod-5 flow on the given orientation, values in {1, 2}.

    Reduction: solve an auxiliary boundary beta(v) = 2 * (d^+ - d^-)(v) mod 5
    with a fresh orientation D'; give value 2 to arcs where D' agrees with d
    and 1 where it disagrees.  Per-vertex algebra: the flow imbalance under d
    is (3/2) * imb_d + (1/2) * imb_D' = (3/2 + 1) * imb_d = (5/2) * imb_d = 0
    mod 5.  The value set {1, 2} contains no zero and no inverse pair mod 5.
    """
    if not _arcs_match(g, d):
        raise ValueError("orientation does not cover the graph")
    k = 5
    imb = d.imbalances(g.vertex_count)
    beta = Boundary.of((2 * x for x in imb), k)
    d2 = find_beta_orientation(g, beta, budget)
    if d2 is None:
        return None
    values = tuple(2 if a == b else 1 for a, b in zip(d.arcs, d2.arcs))
    cert = ModularFlowCert(d, k, values, ("antisymmetric",))
    assert cert.verify(g)
    return cert


# ---------- constructive extension steps ----------


def push_boundary(beta: Boundary, vertex_map: Sequence[int], n_new: int) -> Boundary:
    """Boundary induced on a quotient: each part sums its members' values."""
    values = [0] * n_new
    for v, b in enumerate(beta.values):
        values[vertex_map[v]] += b
    return Boundary.of(values, beta.k)


InternalSolver = Callable[[Multigraph, Boundary], Optional[Orientation]]


def extend_through_contraction(
    g: Multigraph,
    h_parts: Sequence[Iterable[int]],
    d_q: Orientation,
    beta: Boundary,
    budget: Optional[int] = None,
    internal_solver: Optional[InternalSolver] = None,
) -> Optional[Orientation]:
    """Lift a beta-orientation of the quotient G/H back to G.

    External edges copy their quotient direction; each contracted component
    then owes the residual boundary beta'(v) = beta(v) - (external imbalance
    at v) mod k, whose component sum is automatically zero, and is solved
    internally (by ``find_beta_orientation`` unless a solver is supplied).
    Returns None when an internal search proves infeasibility.
    """
    sets = [frozenset(s) for s in h_parts]
    gq, vmap, emap = contract_components(g, sets)
    beta_q = push_boundary(beta, vmap, gq.vertex_count)
    if not verify_beta_orientation(gq, d_q, beta_q):
        raise ValueError("quotient orientation does not satisfy the pushed boundary")
    if internal_solver is None:
        internal_solver = lambda h, b: find_beta_orientation(h, b, budget)

    k = beta.k
    arcs: list[Optional[tuple[int, int]]] = [None] * g.edge_count
    ext_imb = [0] * g.vertex_count
    for eid, (a, b) in enumerate(g.edges):
        q_eid = emap[eid]
        if q_eid is None:
            continue
        q_tail, _ = d_q.arcs[q_eid]
        tail, head = (a, b) if vmap[a] == q_tail else (b, a)
        assert vmap[tail] == q_tail
        arcs[eid] = (tail, head)
        ext_imb[tail] += 1
        ext_imb[head] -= 1

    for s in sets:
        residual = {v: (beta.values[v] - ext_imb[v]) % k for v in s}
        assert sum(residual.values()) % k == 0, "pushed boundary must conserve"
        sub, sub_emap = g.induced_subgraph(s)
        local = sorted(s)
        local_beta = Boundary.of((residual[v] for v in local), k)
        d_h = internal_solver(sub, local_beta)
        if d_h is None:
            return None
        for eid, sub_eid in enumerate(sub_emap):
            if sub_eid is None:
                continue
            t_local, h_local = d_h.arcs[sub_eid]
            arcs[eid] = (local[t_local], local[h_local])

    assert all(arc is not None for arc in arcs)
    d = Orientation(tuple(arcs))  # type: ignore[arg-type]
    assert verify_beta_orientation(g, d, beta)
    return d


def extend_through_lifting(
    g: Multigraph,
    lifts: Sequence[LiftStep],
    d_lifted: Orientation,
    beta: Boundary,
) -> Orientation:
    """Replay a beta-orientation of a lifted graph onto the original graph.

    The lift steps must be exactly those produced when the lifts were applied
    to ``g`` in order.  Each lifted edge's direction is replayed as a
    consistent arc sequence along its original path, which leaves every
    internal path vertex balanced and gives the endpoints the same
    contribution the lifted edge did.
    """
    graphs = [g]
    for step in lifts:
        lifted, check = _replay_lift(graphs[-1], step)
        if check != step:
            raise ValueError("lift record inconsistent with the graph")
        graphs.append(lifted)
    arcs = list(d_lifted.arcs)
    for step, before in zip(reversed(lifts), reversed(graphs[:-1])):
        new_tail, new_head = arcs[step.new_edge_id]
        prev_arcs: list[Optional[tuple[int, int]]] = [None] * before.edge_count
        for old_eid, new_eid in enumerate(step.edge_map):
            if new_eid is not None:
                prev_arcs[old_eid] = arcs[new_eid]
        path = step.path if new_tail == step.path[0] else tuple(reversed(step.path))
        if (path[0], path[-1]) != (new_tail, new_head):
            raise ValueError("lifted edge direction does not match its path")
        ordered_eids = step.edge_ids if new_tail == step.path[0] else tuple(reversed(step.edge_ids))
        for (a, b), eid in zip(zip(path, path[1:]), ordered_eids):
            prev_arcs[eid] = (a, b)
        assert all(arc is not None for arc in prev_arcs)
        arcs = prev_arcs  # type: ignore[assignment]
    d = Orientation(tuple(arcs))
    assert verify_beta_orientation(g, d, beta)
    return d


def _replay_lift(g: Multigraph, step: LiftStep) -> tuple[Multigraph, LiftStep]:
    from .multigraph import apply_lift

    return apply_lift(g, step.path, step.edge_ids)
