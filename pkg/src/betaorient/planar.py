"""Combinatorial planar embeddings, face tracing, and discharging.

A rotation system stores, per vertex, the cyclic order of incident edge ids.
Faces are traced with darts: the successor of a dart is the next edge-end
after its twin in the head's rotation.  A connected rotation system is
accepted as planar exactly when Euler's relation v - e + f = 2 holds.

Discharging gives every face the initial charge d(f) - 5/2 and moves charge
by local rules through chains of 2-faces (a bundle of m parallel edges
contributes m - 1 consecutive 2-faces, so two faces are "weakly adjacent via
2K2" exactly when a multiplicity-2 bundle separates them).  All charges are
exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import networkx as nx

from .multigraph import Multigraph, isomorphic
from .catalog import q_graph, t_graph


class NonPlanarError(RuntimeError):
    """Raised when no planar embedding exists; carries a Kuratowski witness."""

    def __init__(self, witness_edges: tuple[tuple[int, int], ...]):
        super().__init__("graph is not planar")
        self.witness_edges = witness_edges


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of incident edge ids at each vertex."""

    rotations: tuple[tuple[int, ...], ...]

    def validate(self, g: Multigraph) -> None:
        if len(self.rotations) != g.vertex_count:
            raise ValueError("rotation system has wrong number of vertices")
        count = [0] * g.edge_count
        for v, rot in enumerate(self.rotations):
            for eid in rot:
                if not (0 <= eid < g.edge_count):
                    raise ValueError(f"rotation at {v} names unknown edge {eid}")
                if v not in g.edges[eid]:
                    raise ValueError(f"edge {eid} is not incident with vertex {v}")
                count[eid] += 1
        if any(c != 2 for c in count):
            raise ValueError("every edge must appear exactly once at each endpoint")


@dataclass(frozen=True)
class Face:
    index: int
    darts: tuple[int, ...]
    vertices: frozenset[int]
    edge_ids: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[Face, ...]
    dart_face: tuple[int, ...]

    def faces_of_edge(self, eid: int) -> tuple[int, int]:
        return self.dart_face[2 * eid], self.dart_face[2 * eid + 1]


def embed(g: Multigraph) -> RotationSystem:
    """A deterministic planar rotation system, or NonPlanarError with witness.

    Planarity is decided on the simple skeleton; parallel edges are then
    inserted nested (ascending edge ids at the smaller endpoint, descending at
    the larger), which creates the expected chain of 2-faces per bundle.
    """
    n = g.vertex_count
    skeleton = nx.Graph()
    skeleton.add_nodes_from(range(n))
    skeleton.add_edges_from(sorted(g.multiplicities()))
    ok, result = nx.check_planarity(skeleton, counterexample=True)
    if not ok:
        witness = tuple(sorted(tuple(sorted(e)) for e in result.edges()))
        raise NonPlanarError(witness)
    order = result.get_data()
    bundles = g.bundle_edge_ids()
    rotations: list[tuple[int, ...]] = []
    for v in range(n):
        rot: list[int] = []
        for w in order.get(v, []):
            ids = bundles[(v, w) if v < w else (w, v)]
            rot.extend(ids if v < w else reversed(ids))
        rotations.append(tuple(rot))
    rs = RotationSystem(tuple(rotations))
    if g.edge_count and g.is_connected():
        f = len(trace_faces(g, rs).faces)
        assert n - g.edge_count + f == 2, "embedding failed the Euler check"
    return rs


def trace_faces(g: Multigraph, rot: RotationSystem) -> FaceSet:
    """Boundary walks of all faces (dart orbits under next-after-twin)."""
    rot.validate(g)
    m = g.edge_count
    pos: list[dict[int, int]] = [
        {eid: i for i, eid in enumerate(r)} for r in rot.rotations
    ]

    def dart_head(d: int) -> int:
        eid, rev = divmod(d, 2)
        a, b = g.edges[eid]
        return a if rev else b

    def next_dart(d: int) -> int:
        eid = d // 2
        w = dart_head(d)
        r = rot.rotations[w]
        nxt = r[(pos[w][eid] + 1) % len(r)]
        a, _ = g.edges[nxt]
        return 2 * nxt + (0 if a == w else 1)

    dart_face = [-1] * (2 * m)
    faces: list[Face] = []
    for d0 in range(2 * m):
        if dart_face[d0] != -1:
            continue
        walk = []
        d = d0
        while dart_face[d] == -1:
            dart_face[d] = len(faces)
            walk.append(d)
            d = next_dart(d)
        verts = frozenset(dart_head(x) for x in walk)
        faces.append(
            Face(len(faces), tuple(walk), verts, tuple(x // 2 for x in walk))
        )
    return FaceSet(tuple(faces), tuple(dart_face))


def common_face_endpoints(faces: FaceSet, u: int, v: int) -> bool:
    """True iff some face has both vertices on its boundary (safe lift site)."""
    return any(u in f.vertices and v in f.vertices for f in faces.faces)


@dataclass(frozen=True)
class FaceChain:
    """Chain end_a ... end_b whose intermediate faces are all 2-faces.

    ``t`` equals the number of edges in the chain, i.e. the multiplicity of
    the separating bundle; t = 1 is ordinary adjacency.
    """

    end_a: int
    end_b: int
    inner: tuple[int, ...]
    edge_ids: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.edge_ids)


def face_chains(faces: FaceSet) -> list[FaceChain]:
    """All maximal chains between 3+-faces through 2-faces, plus every shared
    edge between two 3+-faces as a t=1 chain.  Cycles made purely of 2-faces
    (as in a bare bundle) produce no chain."""
    chains: list[FaceChain] = []
    seen: set[tuple] = set()
    is_two = [f.degree == 2 for f in faces.faces]

    for f in faces.faces:
        if is_two[f.index]:
            continue
        for d in f.darts:
            eid = d // 2
            twin = d ^ 1
            nbr = faces.dart_face[twin]
            if not is_two[nbr]:
                if nbr == f.index:
                    continue  # both sides of the edge on one face
                key = (min(f.index, nbr), max(f.index, nbr), (eid,))
                if key not in seen:
                    seen.add(key)
                    chains.append(FaceChain(f.index, nbr, (), (eid,)))
                continue
            inner: list[int] = []
            edges = [eid]
            cur = nbr
            prev_edge = eid
            while is_two[cur]:
                inner.append(cur)
                e1, e2 = faces.faces[cur].edge_ids
                step = e2 if e1 == prev_edge else e1
                d1, d2 = 2 * step, 2 * step + 1
                nxt = faces.dart_face[d1] if faces.dart_face[d2] == cur else faces.dart_face[d2]
                if faces.dart_face[d1] == cur and faces.dart_face[d2] == cur:
                    nxt = cur  # degenerate: both sides of the edge on this 2-face
                edges.append(step)
                prev_edge = step
                if nxt == cur:
                    break
                cur = nxt
            if is_two[cur]:
                continue
            key_edges = tuple(edges)
            fwd = (f.index, cur, key_edges)
            rev = (cur, f.index, tuple(reversed(key_edges)))
            if rev in seen or fwd in seen:
                continue
            seen.add(fwd)
            chains.append(FaceChain(f.index, cur, tuple(inner), key_edges))
    return chains


def weak_adjacency(faces: FaceSet) -> list[tuple[int, int, int]]:
    """Pairs of distinct 3+-faces joined by a 2-face chain, one triple per
    chain, reported as (smaller face index, larger face index, t)."""
    out = []
    for ch in face_chains(faces):
        if ch.end_a == ch.end_b:
            continue
        a, b = sorted((ch.end_a, ch.end_b))
        out.append((a, b, ch.t))
    return sorted(out)


# ---------- face pattern recognition ----------


def induced_on_face(g: Multigraph, face: Face) -> Multigraph:
    return g.induced_subgraph(face.vertices)[0]


def q_parameters(h: Multigraph) -> Optional[tuple[int, int, int, int]]:
    """Cyclic multiplicities when h is a plain 4-cycle pattern, else None.

    The tuple is normalized over rotations and reflections (lexicographic
    minimum), so equal tuples mean isomorphic patterns.
    """
    if h.vertex_count != 4:
        return None
    mult = h.multiplicities()
    if len(mult) != 4:
        return None
    adj = {v: set() for v in range(4)}
    for u, v in mult:
        adj[u].add(v)
        adj[v].add(u)
    if any(len(s) != 2 for s in adj.values()):
        return None
    order = [0]
    while len(order) < 4:
        nxt = [w for w in adj[order[-1]] if w not in order]
        if not nxt:
            return None
        order.append(min(nxt))
    if order[0] not in adj[order[-1]]:
        return None

    def m(u: int, v: int) -> int:
        return mult.get((u, v) if u < v else (v, u), 0)

    cyc = [m(order[i], order[(i + 1) % 4]) for i in range(4)]
    variants = []
    for seq in (cyc, list(reversed(cyc))):
        for r in range(4):
            variants.append(tuple(seq[r:] + seq[:r]))
    return min(variants)


def _is_t222(h: Multigraph) -> bool:
    return h.vertex_count == 3 and isomorphic(h, t_graph(2, 2, 2)) is not None


# ---------- discharging ----------


@dataclass
class DischargeTranscript:
    """Per-face charge history and every transfer, in exact rationals."""

    face_degrees: tuple[int, ...]
    ch0: tuple[Fraction, ...]
    ch1: tuple[Fraction, ...]
    ch2: tuple[Fraction, ...]
    transfers: list[tuple[str, int, int, Fraction]] = field(default_factory=list)
    t1_review: list[tuple[int, int]] = field(default_factory=list)

    @property
    def totals(self) -> tuple[Fraction, Fraction, Fraction]:
        return sum(self.ch0, Fraction(0)), sum(self.ch1, Fraction(0)), sum(self.ch2, Fraction(0))

    @property
    def negative_faces(self) -> list[int]:
        return [i for i, c in enumerate(self.ch2) if c < 0]


def discharge(g: Multigraph, rot: RotationSystem) -> DischargeTranscript:
    """Initial charge d(f) - 5/2, then the two redistribution stages.

    Stage 1: every 3+-face sends 1/4 to each 2-face on each chain leaving it.
    Stage 2 acts on ordered pairs of 3+-faces joined by a chain with exactly
    one intermediate 2-face (weak adjacency via 2K2): a 5+-face sends 1/4; a
    4-face whose induced pattern is a 4-cycle with some multiplicity 1 sends
    1/8; a 4-face sends 1/8 to a receiver inducing a doubled triangle.  The
    amounts depend only on face shapes, so the stages commute internally.
    Ordinarily adjacent pairs that would match a stage-2 rule at t=1 are
    flagged for review, not charged.
    """
    faces = trace_faces(g, rot)
    chains = face_chains(faces)
    degrees = tuple(f.degree for f in faces.faces)
    ch0 = tuple(Fraction(2 * d - 5, 2) for d in degrees)
    transfers: list[tuple[str, int, int, Fraction]] = []

    delta1 = [Fraction(0)] * len(degrees)
    for ch in chains:
        for end in (ch.end_a, ch.end_b):
            for two_face in ch.inner:
                amt = Fraction(1, 4)
                transfers.append(("R1", end, two_face, amt))
                delta1[end] -= amt
                delta1[two_face] += amt
    ch1 = tuple(c + d for c, d in zip(ch0, delta1))

    induced_cache: dict[int, Multigraph] = {}

    def h_of(fi: int) -> Multigraph:
        if fi not in induced_cache:
            induced_cache[fi] = induced_on_face(g, faces.faces[fi])
        return induced_cache[fi]

    def stage2_amount(sender: int, receiver: int) -> list[tuple[str, Fraction]]:
        out = []
        if degrees[sender] >= 5:
            out.append(("R2.1", Fraction(1, 4)))
        if degrees[sender] == 4:
            qp = q_parameters(h_of(sender))
            if qp is not None and min(qp) == 1:
                out.append(("R2.2", Fraction(1, 8)))
            if _is_t222(h_of(receiver)):
                out.append(("R2.3", Fraction(1, 8)))
        return out

    delta2 = [Fraction(0)] * len(degrees)
    t1_review: list[tuple[int, int]] = []
    for ch in chains:
        if ch.end_a == ch.end_b:
            continue
        for sender, receiver in ((ch.end_a, ch.end_b), (ch.end_b, ch.end_a)):
            rules = stage2_amount(sender, receiver)
            if ch.t == 2:
                for rule, amt in rules:
                    transfers.append((rule, sender, receiver, amt))
                    delta2[sender] -= amt
                    delta2[receiver] += amt
            elif ch.t == 1 and rules:
                t1_review.append((sender, receiver))
    ch2 = tuple(c + d for c, d in zip(ch1, delta2))
    return DischargeTranscript(degrees, ch0, ch1, ch2, transfers, sorted(set(t1_review)))


# ---------- face configuration scan ----------


@dataclass(frozen=True)
class FaceConfigViolation:
    face: int
    condition: int
    detail: str


def face_config_scan(g: Multigraph, rot: RotationSystem) -> list[FaceConfigViolation]:
    """Check the four face-neighborhood conditions used by the counting step.

    For each face f with H_f the subgraph induced on its boundary vertices:
    (1) H_f a doubled triangle needs at least two weakly adjacent 4+-faces;
    (2) H_f = Q(2,3,3,3) needs a 5+-face weakly adjacent via 2K2;
    (3) H_f in {Q(2,3,2,3), Q(2,2,3,3)} weakly adjacent to a 3-face also
        needs a 5+-face via 2K2;
    (4) H_f = Q(2,2,2,3) allows at most two weakly adjacent (via 2K2) 3-faces
        inducing doubled triangles.
    """
    faces = trace_faces(g, rot)
    chains = face_chains(faces)
    degrees = [f.degree for f in faces.faces]

    partners: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(degrees))}
    for ch in chains:
        if ch.end_a == ch.end_b:
            continue
        partners[ch.end_a].append((ch.end_b, ch.t))
        partners[ch.end_b].append((ch.end_a, ch.t))

    def h_of(fi: int) -> Multigraph:
        return induced_on_face(g, faces.faces[fi])

    violations: list[FaceConfigViolation] = []
    for f in faces.faces:
        h = h_of(f.index)
        qp = q_parameters(h)
        nbrs = partners[f.index]
        if _is_t222(h):
            big = {p for p, _ in nbrs if degrees[p] >= 4}
            if len(big) < 2:
                violations.append(
                    FaceConfigViolation(f.index, 1, f"only {len(big)} weakly adjacent 4+-faces")
                )
        elif qp == (2, 3, 3, 3):
            if not any(degrees[p] >= 5 and t == 2 for p, t in nbrs):
                violations.append(
                    FaceConfigViolation(f.index, 2, "no 5+-face weakly adjacent via 2K2")
                )
        elif qp in ((2, 2, 3, 3), (2, 3, 2, 3)):
            if any(degrees[p] == 3 for p, _ in nbrs):
                if not any(degrees[p] >= 5 and t == 2 for p, t in nbrs):
                    violations.append(
                        FaceConfigViolation(
                            f.index, 3, "3-face neighbor but no 5+-face via 2K2"
                        )
                    )
        elif qp == (2, 2, 2, 3):
            t222_faces = {
                p for p, t in nbrs if t == 2 and degrees[p] == 3 and _is_t222(h_of(p))
            }
            if len(t222_faces) > 2:
                violations.append(
                    FaceConfigViolation(
                        f.index, 4, f"{len(t222_faces)} doubled-triangle 3-faces via 2K2"
                    )
                )
    return violations


# ---------- rotation text format ----------


def format_rotation(rot: RotationSystem) -> str:
    return "\n".join(
        f"{v}: " + " ".join(map(str, r)) for v, r in enumerate(rot.rotations)
    )


def parse_rotation(lines: Sequence[str], g: Multigraph) -> RotationSystem:
    """One line per vertex, 'v: e_i e_j ...'; every edge on exactly two lines."""
    rotations: dict[int, tuple[int, ...]] = {}
    for line in lines:
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if ":" not in text:
            raise ValueError(f"malformed rotation line: {line!r}")
        head, tail = text.split(":", 1)
        v = int(head)
        if v in rotations:
            raise ValueError(f"duplicate rotation line for vertex {v}")
        rotations[v] = tuple(int(x) for x in tail.split())
    if set(rotations) != set(range(g.vertex_count)):
        raise ValueError("rotation block must cover every vertex exactly once")
    rs = RotationSystem(tuple(rotations[v] for v in range(g.vertex_count)))
    rs.validate(g)
    return rs
