"""Shared test helpers: networkx bridges, hypothesis strategies, catalogs."""

from __future__ import annotations

import functools
import random

import networkx as nx
from hypothesis import strategies as st

from indmin.graph import ColoredGraph, Graph, contract_edge, induced_subgraph, is_2connected, relabel
from indmin.named import co_p3_2k1, gem
from indmin.oracles import induced_minor_bruteforce, is_p4_free


def from_nx(G) -> Graph:
    nodes = sorted(G.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in G.edges()])


def to_nx(g: Graph):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def nx_isomorphic(g1, g2) -> bool:
    if isinstance(g1, ColoredGraph):
        a, b = to_nx(g1.graph), to_nx(g2.graph)
        nx.set_node_attributes(a, dict(enumerate(g1.colors)), "c")
        nx.set_node_attributes(b, dict(enumerate(g2.colors)), "c")
        return nx.is_isomorphic(a, b, node_match=lambda x, y: x["c"] == y["c"])
    return nx.is_isomorphic(to_nx(g1), to_nx(g2))


@st.composite
def graphs(draw, min_n=0, max_n=9, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if p is None:
        bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    else:
        seed = draw(st.integers(0, 2**32))
        rng = random.Random(seed)
        bits = [rng.random() < p for _ in pairs]
    return Graph(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))


@st.composite
def graph_and_perm(draw, min_n=0, max_n=9):
    g = draw(graphs(min_n, max_n))
    perm = draw(st.permutations(list(range(g.n))))
    return g, list(perm)


def permuted(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm)


@functools.lru_cache(maxsize=None)
def atlas():
    """All 1253 graphs on at most 7 vertices, one per isomorphism type."""
    return tuple(from_nx(G) for G in nx.graph_atlas_g())


def atlas_n(n):
    return [g for g in atlas() if g.n == n]


def gem_free(g: Graph) -> bool:
    return induced_minor_bruteforce(g, gem()) is None


def cop_free(g: Graph) -> bool:
    return induced_minor_bruteforce(g, co_p3_2k1()) is None


@functools.lru_cache(maxsize=None)
def gem_free_atlas():
    return tuple(g for g in atlas() if gem_free(g))


@functools.lru_cache(maxsize=None)
def gem_free_blocks_atlas():
    return tuple(g for g in gem_free_atlas() if g.n >= 3 and is_2connected(g))


def replay_contraction(g: Graph, w) -> bool:
    """Contract every chain vertex into an anchor neighbor, level by level,
    then check that what is left of each component is P4-free and attaches
    to at most four vertices."""
    for comp in w.components:
        if not w.h_vertices:
            return is_p4_free(g)
        keep = sorted(set(w.h_vertices) | comp.vertices)
        sub = induced_subgraph(g, keep)
        where = {v: i for i, v in enumerate(keep)}
        anchor = set(w.h_vertices)
        for level in comp.chains:
            for v in sorted(level):
                target = next(a for a in sorted(anchor) if sub.has_edge(where[v], where[a]))
                sub, mapping = contract_edge(sub, where[v], where[target])
                where = {x: mapping[i] for x, i in where.items()}
            anchor |= set(level)
        rest = {where[v] for v in comp.residual}
        if rest & {where[a] for a in anchor}:
            return False
        if not is_p4_free(induced_subgraph(sub, sorted(rest))):
            return False
        hit = {x for r in rest for x in sub.adj[r] if x not in rest}
        if len(hit) > 4:
            return False
    return True


@functools.lru_cache(maxsize=None)
def gem_free_8():
    """Every gem-free graph on 8 vertices, one per isomorphism type.

    Deleting a vertex keeps a graph gem-free, so each one is a gem-free
    7-vertex graph plus a vertex; duplicates are removed with networkx and
    survivors are certified by the brute-force oracle.
    """
    buckets = {}
    for g in gem_free_atlas():
        if g.n != 7:
            continue
        for s in range(1 << 7):
            h = Graph(8, g.edges() + [(7, v) for v in range(7) if s >> v & 1])
            G = to_nx(h)
            key = (h.m, tuple(sorted(h.degrees())), nx.weisfeiler_lehman_graph_hash(G, iterations=3))
            seen = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(G, x) for x in seen):
                seen.append(G)
    reps = [from_nx(G) for group in buckets.values() for G in group]
    return tuple(h for h in reps if gem_free(h))


@functools.lru_cache(maxsize=None)
def random_gem_free(count, lo, hi, seed):
    """Oracle-certified 2-connected gem-free sutures with lo <= n <= hi."""
    from indmin.generators import gemfree_suture

    rng = random.Random(seed)
    return tuple(gemfree_suture(rng.randint(lo, hi), rng) for _ in range(count))
