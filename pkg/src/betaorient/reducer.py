"""Recursive reduction of contractible planar graphs, with replayable traces.

The recursion mirrors the structural trichotomy: a contractible planar graph
either has at most 4 vertices (solved by exhaustive search), contains a
contractible proper induced subgraph (contract it and recurse on both the
quotient and the subgraph), or admits a planarity-preserving set of short
path lifts after which such a subgraph appears.  Boundary orientations are
then assembled bottom-up through the recorded steps.

The module also hosts the forbidden-configuration diagnostics: occurrences of
the small patterns whose presence the minimal-counterexample analysis rules
out (a triangle with a tripled side, doubled triangles with two attached
2-paths sharing an end, and the 4-cycle families with short outside paths).
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .catalog import is_s5_contractible, q_graph, t_graph
from .multigraph import LiftStep, Multigraph, apply_lift, find_pattern, isomorphic
from .orientation import (
    Boundary,
    BudgetExhausted,
    Orientation,
    extend_through_contraction,
    extend_through_lifting,
    find_beta_orientation,
    push_boundary,
)
from .partitions import contract_components
from .planar import RotationSystem, common_face_endpoints, embed, trace_faces


class ReductionError(RuntimeError):
    pass


def graph_hash(g: Multigraph) -> str:
    payload = f"{g.vertex_count};" + ",".join(f"{a}-{b}" for a, b in g.edges)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class BaseBruteForce:
    hash: str


@dataclass(frozen=True)
class ContractSubgraph:
    subgraph: frozenset[int]
    hash: str
    child: "TraceStep"
    child_h: "TraceStep"


@dataclass(frozen=True)
class LiftAndContract:
    lifts: tuple[LiftStep, ...]
    face_witnesses: tuple[frozenset[int], ...]
    subgraph: frozenset[int]
    hash: str
    child: "TraceStep"
    child_h: "TraceStep"


TraceStep = Union[BaseBruteForce, ContractSubgraph, LiftAndContract]


@dataclass(frozen=True)
class ReductionTrace:
    root: TraceStep


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted("reduction budget exhausted", {"nodes": self.used})


def _connected_subsets(g: Multigraph, min_size: int, max_size: int) -> Iterator[frozenset[int]]:
    """Connected vertex subsets by increasing size, lexicographic within size."""
    n = g.vertex_count
    for size in range(min_size, max_size + 1):
        for combo in itertools.combinations(range(n), size):
            if g.is_connected_subset(combo):
                yield frozenset(combo)


def find_contractible_subgraph(
    g: Multigraph, budget: Optional[int] = None
) -> Optional[frozenset[int]]:
    """Smallest-first proper induced subgraph that is contractibility-good.

    Returns None only after every connected proper subset of size >= 2 has
    been rejected; running out of budget raises instead.
    """
    tracker = budget if isinstance(budget, _Budget) else _Budget(budget)
    for subset in _connected_subsets(g, 2, g.vertex_count - 1):
        tracker.spend()
        sub, _ = g.induced_subgraph(subset)
        if is_s5_contractible(sub)[0]:
            return subset
    return None


def _lift_site_candidates(g: Multigraph) -> list[tuple[int, ...]]:
    """Paths of 2 or 3 edges with distinct vertices, shorter first."""
    mult = g.multiplicities()

    def m(u: int, v: int) -> int:
        return mult.get((u, v) if u < v else (v, u), 0)

    n = g.vertex_count
    paths: list[tuple[int, ...]] = []
    for mid in range(n):
        for a, b in itertools.combinations(sorted(g.neighbors(mid)), 2):
            paths.append((a, mid, b))
    for p in itertools.permutations(range(n), 4):
        if p[0] > p[3]:
            continue  # reversal gives the same lift
        if m(p[0], p[1]) and m(p[1], p[2]) and m(p[2], p[3]):
            paths.append(p)
    paths.sort(key=lambda p: (len(p), p))
    return paths


def _apply_plan(
    g: Multigraph, plan: Sequence[tuple[int, ...]]
) -> Optional[tuple[Multigraph, tuple[LiftStep, ...], tuple[frozenset[int], ...]]]:
    """Apply lifts in order, re-embedding after each; None when illegal."""
    cur = g
    steps: list[LiftStep] = []
    witnesses: list[frozenset[int]] = []
    for path in plan:
        try:
            rot = embed(cur)
        except Exception:
            return None
        faces = trace_faces(cur, rot)
        witness = next(
            (f.vertices for f in faces.faces if path[0] in f.vertices and path[-1] in f.vertices),
            None,
        )
        if witness is None:
            return None
        mult = cur.multiplicities()
        ok = all(
            mult.get((a, b) if a < b else (b, a), 0) > 0 for a, b in zip(path, path[1:])
        )
        if not ok:
            return None
        cur, step = apply_lift(cur, path)
        steps.append(step)
        witnesses.append(witness)
    return cur, tuple(steps), tuple(witnesses)


def find_lift_plan(
    g: Multigraph, rot: RotationSystem, budget: Optional[int] = None
) -> Optional[tuple[tuple[LiftStep, ...], tuple[frozenset[int], ...], frozenset[int]]]:
    """A legal lift plan exposing a contractible subgraph with contractible
    quotient, or None.

    Plans use at most three simultaneous lifts of 2- or 3-edge paths and are
    searched in increasing total lifted-edge count; each lift requires its
    endpoints on a common face of the current (re-)embedding.  The returned
    subgraph is a vertex set of the lifted graph.
    """
    tracker = budget if isinstance(budget, _Budget) else _Budget(budget)
    sites = _lift_site_candidates(g)
    plans: list[tuple[tuple[int, ...], ...]] = []
    for count in (1, 2, 3):
        for combo in itertools.combinations(sites, count):
            plans.append(combo)
    plans.sort(key=lambda c: (sum(len(p) - 1 for p in c), c))
    for plan in plans:
        tracker.spend()
        applied = _apply_plan(g, plan)
        if applied is None:
            continue
        lifted, steps, witnesses = applied
        if not lifted.is_connected():
            continue
        for subset in _connected_subsets(lifted, 2, lifted.vertex_count):
            tracker.spend()
            sub, _ = lifted.induced_subgraph(subset)
            if not is_s5_contractible(sub)[0]:
                continue
            quotient, _, _ = contract_components(lifted, [subset])
            if quotient.vertex_count == 1 or (
                quotient.is_connected() and is_s5_contractible(quotient)[0]
            ):
                return steps, witnesses, subset
    return None


def reduce(
    g: Multigraph, rot: Optional[RotationSystem] = None, budget: Optional[int] = None
) -> ReductionTrace:
    """Reduction trace for a contractible planar graph.

    Every leaf is a graph on at most 4 vertices; internal nodes record a
    verified contraction or lift-and-contract step.
    """
    ok, witness = is_s5_contractible(g)
    if not ok:
        raise ReductionError(f"input is not contractible: {witness}")
    tracker = _Budget(budget)
    return ReductionTrace(_reduce_step(g, rot, tracker))


def _reduce_step(g: Multigraph, rot: Optional[RotationSystem], tracker: _Budget) -> TraceStep:
    if g.vertex_count <= 4:
        return BaseBruteForce(graph_hash(g))
    subset = find_contractible_subgraph(g, tracker)
    if subset is not None:
        quotient, _, _ = contract_components(g, [subset])
        sub, _ = g.induced_subgraph(subset)
        assert is_s5_contractible(quotient)[0], "quotient of a contractible graph"
        return ContractSubgraph(
            subgraph=subset,
            hash=graph_hash(g),
            child=_reduce_step(quotient, None, tracker),
            child_h=_reduce_step(sub, None, tracker),
        )
    if rot is None:
        rot = embed(g)
    plan = find_lift_plan(g, rot, tracker)
    if plan is None:
        raise ReductionError(
            "no contraction or short-lift step found within the search caps"
        )
    steps, witnesses, subset = plan
    lifted = g
    for step in steps:
        lifted = apply_lift(lifted, step.path, step.edge_ids)[0]
    quotient, _, _ = contract_components(lifted, [subset])
    sub, _ = lifted.induced_subgraph(subset)
    child: TraceStep
    if quotient.vertex_count == 1:
        child = BaseBruteForce(graph_hash(quotient))
    else:
        child = _reduce_step(quotient, None, tracker)
    return LiftAndContract(
        lifts=steps,
        face_witnesses=witnesses,
        subgraph=subset,
        hash=graph_hash(g),
        child=child,
        child_h=_reduce_step(sub, None, tracker),
    )


def orient_with_trace(g: Multigraph, trace: ReductionTrace, beta: Boundary) -> Orientation:
    """Replay a trace to assemble a beta-orientation; verified at every level."""
    return _orient_step(g, trace.root, beta)


def _orient_step(g: Multigraph, step: TraceStep, beta: Boundary) -> Orientation:
    if isinstance(step, BaseBruteForce):
        if step.hash != graph_hash(g):
            raise ReductionError("trace does not match the graph at a leaf")
        d = find_beta_orientation(g, beta)
        if d is None:
            raise ReductionError("leaf graph admits no orientation for this boundary")
        return d
    if isinstance(step, ContractSubgraph):
        if step.hash != graph_hash(g):
            raise ReductionError("trace does not match the graph at a contraction")
        return _orient_contraction(g, step.subgraph, step.child, step.child_h, beta)
    assert isinstance(step, LiftAndContract)
    if step.hash != graph_hash(g):
        raise ReductionError("trace does not match the graph at a lift step")
    lifted = g
    for lift in step.lifts:
        lifted = apply_lift(lifted, lift.path, lift.edge_ids)[0]
    d_lifted = _orient_contraction(lifted, step.subgraph, step.child, step.child_h, beta)
    return extend_through_lifting(g, step.lifts, d_lifted, beta)


def _orient_contraction(
    g: Multigraph,
    subset: frozenset[int],
    child: TraceStep,
    child_h: TraceStep,
    beta: Boundary,
) -> Orientation:
    quotient, vmap, _ = contract_components(g, [subset])
    beta_q = push_boundary(beta, vmap, quotient.vertex_count)
    if quotient.vertex_count == 1:
        d_q = Orientation(())
    else:
        d_q = _orient_step(quotient, child, beta_q)
    d = extend_through_contraction(
        g,
        [subset],
        d_q,
        beta,
        internal_solver=lambda h, b: _orient_step(h, child_h, b),
    )
    if d is None:
        raise ReductionError("internal orientation failed during replay")
    return d


def solve_beta(
    g: Multigraph,
    rot: Optional[RotationSystem],
    beta: Boundary,
    budget: Optional[int] = None,
    trace: Optional[ReductionTrace] = None,
) -> Orientation:
    """Beta-orientation of a contractible planar graph via its reduction trace."""
    if trace is None:
        trace = reduce(g, rot, budget)
    return orient_with_trace(g, trace, beta)


# ---------- forbidden-configuration diagnostics ----------


@dataclass
class ForbiddenReport:
    """Occurrences of the patterns excluded by the structural analysis."""

    t113: list[tuple[int, ...]] = field(default_factory=list)
    t222_two_paths: list[dict] = field(default_factory=list)
    q2333_short_path: list[dict] = field(default_factory=list)
    q2233_paths: list[dict] = field(default_factory=list)
    q2223_triple: list[dict] = field(default_factory=list)

    def is_clean(self) -> bool:
        return not (
            self.t113
            or self.t222_two_paths
            or self.q2333_short_path
            or self.q2233_paths
            or self.q2223_triple
        )


def _h_paths(g: Multigraph, hset: frozenset[int], max_len: int) -> list[tuple[int, ...]]:
    """Paths v0..vn (2 <= n <= max_len) with endpoints in hset, interior outside."""
    out: list[tuple[int, ...]] = []
    outside = [v for v in range(g.vertex_count) if v not in hset]
    mult = g.multiplicities()

    def m(u: int, v: int) -> int:
        return mult.get((u, v) if u < v else (v, u), 0)

    for inner_len in range(1, max_len):
        for inner in itertools.permutations(outside, inner_len):
            if inner_len > 1 and inner[0] > inner[-1]:
                continue
            if any(m(a, b) == 0 for a, b in zip(inner, inner[1:])):
                continue
            for v0 in sorted(hset):
                if m(v0, inner[0]) == 0:
                    continue
                for vn in sorted(hset):
                    if vn == v0 or m(inner[-1], vn) == 0:
                        continue
                    # inner tuples of length >= 2 are already direction-canonical
                    if inner_len == 1 and v0 > vn:
                        continue
                    out.append((v0, *inner, vn))
    return out


def _induced_q_sets(g: Multigraph, params: tuple[int, int, int, int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Vertex 4-sets whose induced subgraph is the given cycle pattern.

    Returns (sorted vertex tuple, one cyclic vertex order realizing the
    parameters in order).
    """
    pattern = q_graph(*params)
    hits = []
    for combo in itertools.combinations(range(g.vertex_count), 4):
        sub, _ = g.induced_subgraph(combo)
        iso = isomorphic(pattern, sub)
        if iso is not None:
            cycle = tuple(combo[iso[i]] for i in range(4))
            hits.append((combo, cycle))
    return hits


def forbidden_scan(g: Multigraph) -> ForbiddenReport:
    """Search for each forbidden local configuration; empty report = clean."""
    report = ForbiddenReport()
    report.t113 = find_pattern(g, t_graph(1, 1, 3))

    # Doubled triangle with two internally disjoint attached 2-paths sharing
    # an end vertex.
    t222 = t_graph(2, 2, 2)
    mult = g.multiplicities()

    def m(u: int, v: int) -> int:
        return mult.get((u, v) if u < v else (v, u), 0)

    for combo in itertools.combinations(range(g.vertex_count), 3):
        sub, _ = g.induced_subgraph(combo)
        if isomorphic(sub, t222) is None:
            continue
        hset = frozenset(combo)
        paths = [p for p in _h_paths(g, hset, 2)]
        for p1, p2 in itertools.combinations(paths, 2):
            if p1[1] == p2[1]:
                continue  # not internally disjoint
            if {p1[0], p1[2]} & {p2[0], p2[2]}:
                report.t222_two_paths.append(
                    {"triangle": combo, "paths": (p1, p2)}
                )

    for combo, _cycle in _induced_q_sets(g, (2, 3, 3, 3)):
        for path in _h_paths(g, frozenset(combo), 3):
            report.q2333_short_path.append({"cycle": combo, "path": path})

    for params in ((2, 2, 3, 3), (2, 3, 2, 3)):
        for combo, _cycle in _induced_q_sets(g, params):
            hset = frozenset(combo)
            two_paths = [p for p in _h_paths(g, hset, 2)]
            longer = _h_paths(g, hset, 3)
            for p in two_paths:
                for q in longer:
                    if p == q or (len(q) == 3 and q < p):
                        continue
                    if set(p[1:-1]) & set(q[1:-1]):
                        continue
                    report.q2233_paths.append(
                        {"cycle": combo, "params": params, "paths": (p, q)}
                    )

    # Q(2,2,2,3) with three attached 2-paths across the three doubled slots,
    # the middle one landing with multiplicity 2 on both ends.
    for combo, cycle in _induced_q_sets(g, (2, 2, 2, 3)):
        hset = frozenset(combo)
        outside = [v for v in range(g.vertex_count) if v not in hset]
        for orient in (cycle, tuple(reversed(cycle))):
            for r in range(4):
                v1, v2, v3, v4 = orient[r:] + orient[:r]
                if not (
                    m(v1, v2) == 2 and m(v2, v3) == 2 and m(v3, v4) == 2 and m(v4, v1) == 3
                ):
                    continue
                for x, y, z in itertools.permutations(outside, 3):
                    if not (m(v1, x) and m(x, v2)):
                        continue
                    if not (m(v2, y) == 2 and m(y, v3) == 2):
                        continue
                    if not (m(v3, z) and m(z, v4)):
                        continue
                    entry = {
                        "cycle": (v1, v2, v3, v4),
                        "middles": (x, y, z),
                    }
                    if entry not in report.q2223_triple:
                        report.q2223_triple.append(entry)
    return report
