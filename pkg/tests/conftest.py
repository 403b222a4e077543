"""Shared constructions and brute-force oracles for the test suite."""
from __future__ import annotations

import itertools
import random

from betaorient.catalog import (
    a_k2,
    cycle_graph,
    double_k4,
    q_graph,
    t_graph,
    w1_graph,
    w2_graph,
)
from betaorient.multigraph import Multigraph
from betaorient.orientation import Orientation


def fig6_graph() -> Multigraph:
    """Doubled triangle {0,1,2} plus 3 attached to 0,1 and 4 attached to 0,2."""
    return Multigraph.from_multiplicities(
        5, {(0, 1): 2, (0, 2): 2, (1, 2): 2, (0, 3): 1, (1, 3): 1, (0, 4): 1, (2, 4): 1}
    )


def fig2b_graph() -> Multigraph:
    """5-vertex, 17-edge reconstruction with no contractible proper subgraph."""
    return Multigraph.from_multiplicities(
        5,
        {
            (0, 3): 2,
            (0, 4): 2,
            (3, 4): 3,
            (0, 1): 2,
            (0, 2): 1,
            (1, 2): 3,
            (1, 3): 1,
            (2, 3): 1,
            (2, 4): 2,
        },
    )


def fig7_graph() -> Multigraph:
    """Q(2,2,2,3) on 0..3 with three attached 2-paths, the middle one doubled."""
    return Multigraph.from_multiplicities(
        7,
        {
            (0, 1): 2,
            (1, 2): 2,
            (2, 3): 2,
            (0, 3): 3,
            (0, 4): 1,
            (1, 4): 1,
            (1, 5): 2,
            (2, 5): 2,
            (2, 6): 1,
            (3, 6): 1,
        },
    )


def random_multigraph(
    rng: random.Random,
    n_min: int = 2,
    n_max: int = 6,
    mu_max: int = 3,
    connected: bool = True,
    density: float = 0.6,
) -> Multigraph:
    while True:
        n = rng.randint(n_min, n_max)
        mult = {}
        for pair in itertools.combinations(range(n), 2):
            if rng.random() < density:
                mult[pair] = rng.randint(1, mu_max)
        g = Multigraph.from_multiplicities(n, mult)
        if g.edge_count == 0:
            continue
        if connected and not g.is_connected():
            continue
        return g


def random_orientation(rng: random.Random, g: Multigraph) -> Orientation:
    return Orientation(
        tuple((a, b) if rng.random() < 0.5 else (b, a) for a, b in g.edges)
    )


def brute_force_min_cut(g: Multigraph) -> int:
    n = g.vertex_count
    best = None
    for mask in range(1 << (n - 1)):
        side = {0} | {v for v in range(1, n) if mask & (1 << (v - 1))}
        if len(side) == n:
            continue
        c = g.cut_size(side)
        if best is None or c < best:
            best = c
    return best


def achievable_boundaries(g: Multigraph, k: int) -> set[tuple[int, ...]]:
    """All imbalance residue vectors over every per-bundle orientation split.

    Exhausts all orientations up to within-bundle symmetry, which covers the
    full set of achievable vectors.
    """
    n = g.vertex_count
    bundles = list(g.multiplicities().items())
    out: set[tuple[int, ...]] = set()

    def rec(idx: int, imb: list[int]) -> None:
        if idx == len(bundles):
            out.add(tuple(x % k for x in imb))
            return
        (u, v), m = bundles[idx]
        for y in range(m + 1):
            imb[u] += 2 * y - m
            imb[v] -= 2 * y - m
            rec(idx + 1, imb)
            imb[u] -= 2 * y - m
            imb[v] += 2 * y - m

    rec(0, [0] * n)
    return out


def named_corpus() -> list[tuple[str, Multigraph]]:
    return [
        ("3K2", a_k2(3)),
        ("4K2", a_k2(4)),
        ("5K2", a_k2(5)),
        ("T113", t_graph(1, 1, 3)),
        ("T133", t_graph(1, 3, 3)),
        ("T223", t_graph(2, 2, 3)),
        ("T233", t_graph(2, 3, 3)),
        ("T044", t_graph(0, 4, 4)),
        ("W1", w1_graph()),
        ("W2", w2_graph()),
        ("2K4", double_k4()),
        ("Q3333", q_graph(3, 3, 3, 3)),
        ("C4x5", cycle_graph(4, 5)),
    ]
