"""Small named graphs used as patterns and fixtures."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .graph import Graph, complement, disjoint_union


def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_multipartite(parts: Sequence[int]) -> Graph:
    owner = [i for i, size in enumerate(parts) for _ in range(size)]
    n = len(owner)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if owner[u] != owner[v]])


def wheel(rim: int) -> Graph:
    """Hub 0 joined to a cycle on ``1..rim``."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph(rim + 1, edges)


def gem() -> Graph:
    """P4 on 0-1-2-3 plus vertex 4 adjacent to all of it."""
    return Graph(5, [(0, 1), (1, 2), (2, 3)] + [(i, 4) for i in range(4)])


def co_p3_2k1() -> Graph:
    """Complement of P3 + 2K1, i.e. K5 minus the edges 1-0 and 1-2.

    Vertex 1 (the P3 center in the complement) has degree two.
    """
    p3_2k1 = Graph(5, [(0, 1), (1, 2)])
    return complement(p3_2k1)


def k3_k1() -> Graph:
    return disjoint_union(complete(3), empty(1))


def k2_k1() -> Graph:
    return disjoint_union(complete(2), empty(1))


def paw() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def diamond() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def claw() -> Graph:
    return star(3)


def kite() -> Graph:
    """Diamond plus a pendant vertex at one of its degree-2 vertices.

    Triangle 1-2-3 with vertex 0 on the edge 1-2 and pendant 4 at 3; the
    triangle 0-1-2 together with 4 is an induced K3 + K1.
    """
    return Graph(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)])


def bowtie() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def prism() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def co_h() -> Graph:
    """K4 on 0..3 plus vertex 4 on {0, 1} and vertex 5 on {2, 3}."""
    return Graph(6, list(combinations(range(4), 2)) + [(4, 0), (4, 1), (5, 2), (5, 3)])
