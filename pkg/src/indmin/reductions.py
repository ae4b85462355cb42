"""Isomorphism-preserving constructions into the hard classes.

Each reduction keeps the original vertices at indices ``0..n-1`` and appends
the subdivision vertices edge by edge (edges in sorted order).
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .dichotomy import SplitPartition, cobipartite_witness, is_split_partition
from .graph import Graph, complement, local_complement, subdivide_edges
from .structure import find_k3uk1_violation

TARGETS = ("split", "cobipartite", "k3uk1-free")


def _complement_within(g: Graph, vertices) -> Graph:
    vs = sorted(vertices)
    vm = 0
    for v in vs:
        vm |= 1 << v
    masks = list(g.masks)
    for v in vs:
        masks[v] ^= vm & ~(1 << v)
    return Graph.from_masks(masks)


def _need_edge(g: Graph):
    if g.m == 0:
        raise ValueError("reduction needs at least one edge")


def split_reduction(g: Graph) -> Tuple[Graph, List[tuple]]:
    _need_edge(g)
    s, tags = subdivide_edges(g, 1)
    return _complement_within(s, range(g.n)), tags


def cobipartite_reduction(g: Graph) -> Tuple[Graph, List[tuple]]:
    _need_edge(g)
    s, tags = subdivide_edges(g, 1)
    s = _complement_within(s, range(g.n))
    return _complement_within(s, range(g.n, s.n)), tags


def k3uk1_reduction(g: Graph, order=None) -> Tuple[Graph, List[tuple]]:
    """3-subdivide, locally complement at every original vertex, complement.

    ``order`` only exists so tests can check that the order of the local
    complementations does not matter.
    """
    if g.n == 0 or g.min_degree() < 3:
        raise ValueError("reduction needs minimum degree at least 3")
    s, tags = subdivide_edges(g, 3)
    for v in (range(g.n) if order is None else order):
        s = local_complement(s, v)
    return complement(s), tags


def reduce_to_restricted_split(g: Graph) -> Graph:
    return split_reduction(g)[0]


def reduce_to_cobipartite(g: Graph) -> Graph:
    return cobipartite_reduction(g)[0]


def reduce_to_k3uk1_free(g: Graph) -> Graph:
    return k3uk1_reduction(g)[0]


def reduce(g: Graph, target: str) -> Tuple[Graph, List[tuple]]:
    if target == "split":
        return split_reduction(g)
    if target == "cobipartite":
        return cobipartite_reduction(g)
    if target == "k3uk1-free":
        return k3uk1_reduction(g)
    raise ValueError(f"unknown target {target!r}")


def certificate(out: Graph, tags: List[tuple], target: str) -> Dict:
    """Class-membership evidence for a reduction output, checked on the spot."""
    originals = [v for v, t in enumerate(tags) if t[0] == "orig"]
    subs = [v for v, t in enumerate(tags) if t[0] == "sub"]
    if target == "split":
        part = SplitPartition(frozenset(originals), frozenset(subs))
        ok = is_split_partition(out, part.clique, part.independent) and part.max_clique_neighbors(out) <= 2
        return {"valid": ok, "partition": part.to_json(), "max_clique_neighbors": part.max_clique_neighbors(out)}
    if target == "cobipartite":
        ok, wit = cobipartite_witness(out)
        cert = {"valid": ok}
        if ok:
            cert["cliques"] = [list(wit[0]), list(wit[1])]
        else:
            cert["odd_cycle_in_complement"] = wit
        return cert
    if target == "k3uk1-free":
        bad = find_k3uk1_violation(out)
        cert = {"valid": bad is None, "check": "non-neighborhood of every vertex is a forest"}
        if bad is not None:
            cert["violation"] = {"vertex": bad[0], "cycle": bad[1]}
        return cert
    raise ValueError(f"unknown target {target!r}")
