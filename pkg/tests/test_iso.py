import random

import networkx as nx
import pytest
from hypothesis import given

from helpers import atlas, from_nx, gem_free_atlas, graph_and_perm, nx_isomorphic, permuted, to_nx
from indmin.budget import Budget, BudgetExhausted
from indmin.cotree import NotP4Free
from indmin.generators import multipartite, random_cograph, random_cubic, shuffled
from indmin.graph import ColoredGraph, Graph, disjoint_union, is_connected, relabel
from indmin.iso import (
    ClassAssumptionViolated,
    IsoResult,
    apexed_cograph_certificate,
    cograph_certificate,
    compact_k8_branch,
    cop32k1_free_iso,
    find_isomorphism_general,
    gem_free_iso,
    general_iso,
    iso_apexed_cograph,
    iso_via_blocks,
    isomorphic,
)
from indmin.named import bowtie, complete, complete_multipartite, cycle, empty, path, star
from indmin.oracles import is_isomorphism, is_p4_free, is_valid_model, iso_bruteforce


def oracle(g1, g2):
    return iso_bruteforce(g1, g2) is not None


# ------------------------------------------------------------- certificates


def test_certificate_examples():
    a = ColoredGraph(empty(2), (0, 1))
    b = ColoredGraph(empty(2), (1, 0))
    assert cograph_certificate(a) == cograph_certificate(b)
    assert cograph_certificate(complete(2)) != cograph_certificate(empty(2))
    with pytest.raises(NotP4Free):
        cograph_certificate(path(4))


def test_certificate_large_cograph():
    rng = random.Random(40)
    g = random_cograph(40, rng)
    assert cograph_certificate(g) == cograph_certificate(shuffled(g, rng))
    toggled = 0
    for u, v in [(u, v) for u in range(40) for v in range(u + 1, 40)]:
        edges = set(g.edges()) ^ {(u, v)}
        h = Graph(40, edges)
        if is_p4_free(h):
            assert cograph_certificate(h) != cograph_certificate(g)
            toggled += 1
            if toggled >= 5:
                break
    assert toggled


def test_certificate_permutation_invariant():
    rng = random.Random(7)
    for _ in range(1000):
        g = random_cograph(rng.randint(1, 14), rng)
        colors = tuple(rng.randrange(3) for _ in range(g.n))
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = relabel(g, perm)
        hc = [0] * g.n
        for v in range(g.n):
            hc[perm[v]] = colors[v]
        assert cograph_certificate(ColoredGraph(g, colors)) == cograph_certificate(ColoredGraph(h, tuple(hc)))


def test_certificate_sound_on_catalog():
    """Equal certificates iff isomorphic, over every pair of a cograph catalog."""
    rng = random.Random(3)
    catalog = [g for g in atlas() if is_p4_free(g)]
    for n in (8, 9):
        seen = []
        for _ in range(120):
            g = random_cograph(n, rng)
            if not any(nx_isomorphic(g, h) for h in seen):
                seen.append(g)
        catalog += seen
    certs = [cograph_certificate(g) for g in catalog]
    assert len(set(certs)) == len(catalog)
    for _ in range(300):
        g = rng.choice(catalog)
        assert cograph_certificate(permuted(g, rng)) == cograph_certificate(g)


# --------------------------------------------------------- apexed cographs


def test_apexed_examples():
    g = random_cograph(6, 1)
    assert iso_apexed_cograph(g, [], shuffled(g, 2), []) == (cograph_certificate(g) == cograph_certificate(shuffled(g, 2)))
    assert iso_apexed_cograph(complete(4), [0], complete(4), [3])
    with pytest.raises(ValueError):
        iso_apexed_cograph(complete(6), [0, 1, 2, 3, 4], complete(6), [0, 1, 2, 3, 4])


def _apexed(rng, n, k):
    base = random_cograph(n - k, rng)
    edges = list(base.edges())
    for a in range(n - k, n):
        edges += [(a, v) for v in range(a) if rng.random() < 0.5]
    return Graph(n, edges), list(range(n - k, n))


def test_apexed_agrees_with_oracle():
    """Two apices on a 7-vertex cograph; apex sets must map onto each other."""
    rng = random.Random(12)
    for i in range(300):
        g1, a1 = _apexed(rng, 9, 2)
        if i % 2:
            perm = list(range(9))
            rng.shuffle(perm)
            g2, a2 = relabel(g1, perm), [perm[a] for a in a1]
        else:
            g2, a2 = _apexed(rng, 9, 2)
        c1 = ColoredGraph(g1, tuple(1 if v in a1 else 0 for v in range(9)))
        c2 = ColoredGraph(g2, tuple(1 if v in a2 else 0 for v in range(9)))
        assert iso_apexed_cograph(g1, a1, g2, a2) == oracle(c1, c2)


def test_apexed_certificate_depends_on_order():
    g = Graph(4, [(0, 1), (0, 2)])
    assert apexed_cograph_certificate(g, [0, 1]) != apexed_cograph_certificate(g, [1, 0])


# ------------------------------------------------------------------ blocks


def _trivial_tester(b1, b2):
    if b1.n != 2 or b2.n != 2:
        raise AssertionError("tree tester got a non-edge block")
    return sorted(b1.colors) == sorted(b2.colors)


def test_via_blocks_on_trees():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 14)
        t1 = from_nx(nx.random_labeled_tree(n, seed=rng.randrange(10**6)))
        t2 = permuted(t1, rng) if rng.random() < 0.5 else from_nx(nx.random_labeled_tree(n, seed=rng.randrange(10**6)))
        assert iso_via_blocks(t1, t2, _trivial_tester) == nx.is_isomorphic(to_nx(t1), to_nx(t2))


def test_via_blocks_distinguishes_tree_shapes():
    tester = lambda a, b: oracle(a, b)
    triangles_bridge = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    assert not iso_via_blocks(bowtie(), disjoint_union(complete(3), complete(3)), tester)
    assert not iso_via_blocks(disjoint_union(bowtie(), Graph(1)), triangles_bridge, tester)


def test_via_blocks_with_oracle_tester():
    rng = random.Random(6)
    done = 0
    while done < 200:
        n = rng.randint(2, 10)
        p = rng.choice([0.2, 0.3, 0.5])
        g1 = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        if not is_connected(g1):
            continue
        g2 = permuted(g1, rng) if rng.random() < 0.5 else permuted(Graph(n, list(g1.edges())[1:] + [(0, n - 1)] if g1.m else []), rng)
        if not is_connected(g2):
            continue
        assert iso_via_blocks(g1, g2, oracle) == oracle(g1, g2)
        done += 1


def test_via_blocks_disconnected():
    g1 = disjoint_union(cycle(4), path(3))
    g2 = disjoint_union(path(3), cycle(4))
    assert iso_via_blocks(g1, g2, oracle)
    assert not iso_via_blocks(g1, disjoint_union(star(2), star(3)), oracle)


# ---------------------------------------------------------------- gem-free


def _ahu(t: Graph) -> str:
    """Canonical string of a free tree: AHU encoding rooted at the center(s)."""
    G = to_nx(t)
    centers = nx.center(G) if t.n else []

    def enc(v, parent):
        return "(" + "".join(sorted(enc(w, v) for w in G[v] if w != parent)) + ")"

    return min(enc(c, None) for c in centers)


def test_gem_free_trees_match_ahu():
    rng = random.Random(13)
    for _ in range(80):
        n = rng.randint(1, 15)
        t1 = from_nx(nx.random_labeled_tree(n, seed=rng.randrange(10**6)))
        t2 = permuted(t1, rng) if rng.random() < 0.5 else from_nx(nx.random_labeled_tree(n, seed=rng.randrange(10**6)))
        r = gem_free_iso(t1, t2)
        assert r.isomorphic == (_ahu(t1) == _ahu(t2)) and not r.fallback


def test_gem_free_examples():
    assert gem_free_iso(cycle(6), shuffled(cycle(6), 3)).isomorphic
    lollipop = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)])
    r = gem_free_iso(cycle(6), lollipop)
    assert not r.isomorphic and not r.fallback


def test_gem_free_atlas_exhaustive_small():
    """Every ordered pair of gem-free atlas graphs up to 6 vertices with the
    same (n, m), plus a permuted copy of each."""
    rng = random.Random(14)
    gs = [g for g in gem_free_atlas() if g.n <= 6]
    by = {}
    for g in gs:
        by.setdefault((g.n, g.m), []).append(g)
    for group in by.values():
        for g1 in group:
            r = gem_free_iso(g1, permuted(g1, rng))
            assert r.isomorphic and not r.fallback
            for g2 in group:
                assert gem_free_iso(g1, g2).isomorphic == (g1 is g2)


def test_gem_free_colored():
    g = cycle(5)
    a = ColoredGraph(g, (0, 0, 1, 0, 0))
    b = ColoredGraph(g, (0, 1, 0, 0, 0))
    c = ColoredGraph(g, (1, 1, 0, 0, 0))
    assert gem_free_iso(a, b).isomorphic
    assert not gem_free_iso(a, c).isomorphic


def test_gem_free_deterministic():
    rng = random.Random(15)
    g = gem_free_atlas()[-1]
    h = permuted(g, rng)
    runs = [gem_free_iso(g, h).to_json() for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


# ---------------------------------------------------------- co-(P3 + 2K1)


def test_cop_multipartite_branch():
    g = complete_multipartite([2] * 8)
    r = cop32k1_free_iso(g, shuffled(g, 1))
    assert r.isomorphic and r.branches.get("k8") and not r.fallback
    model = compact_k8_branch(g)
    assert model is not None and model.is_compact and is_valid_model(g, complete(8), model)
    # one vertex per part is a K8 as well
    assert all(g.has_edge(2 * i, 2 * j) for i in range(8) for j in range(i + 1, 8))
    padded = complete_multipartite([2] * 6 + [1, 3])
    r = cop32k1_free_iso(g, padded)
    assert not r.isomorphic
    assert cop32k1_free_iso(cycle(6), shuffled(cycle(6), 2)).fallback


def test_cop_raises_on_assumption_violation():
    # K8 plus an edge 8-9 seen only by 0 and 1: one block with a compact K8,
    # yet 8-9 and vertex 2 form an induced K2 + K1
    g = Graph(10, complete(8).edges() + [(8, 0), (8, 1), (9, 0), (9, 1), (8, 9)])
    with pytest.raises(ClassAssumptionViolated):
        cop32k1_free_iso(g, g)


def test_cop_on_atlas_members():
    from helpers import cop_free

    rng = random.Random(16)
    members = [g for g in atlas() if g.n >= 5 and cop_free(g)]
    for g in rng.sample(members, 80):
        h = permuted(g, rng)
        assert cop32k1_free_iso(g, h).isomorphic
        other = rng.choice(members)
        assert cop32k1_free_iso(g, other).isomorphic == oracle(g, other)


# ----------------------------------------------------------------- general


def test_general_examples():
    g = random_cubic(12, 3)
    m = find_isomorphism_general(g, shuffled(g, 4))
    assert m is not None and is_isomorphism(g, shuffled(g, 4), m)
    assert not general_iso(path(4), star(3))


def test_general_on_cubic_pairs():
    rng = random.Random(17)
    for n in (8, 10, 12, 14):
        for _ in range(10):
            a, b = random_cubic(n, rng), random_cubic(n, rng)
            assert general_iso(a, b) == oracle(a, b)


@given(graph_and_perm(max_n=9))
def test_general_on_permutations(gp):
    g, perm = gp
    assert general_iso(g, relabel(g, perm))


def test_general_budget():
    g = random_cubic(20, 1)
    with pytest.raises(BudgetExhausted):
        find_isomorphism_general(g, shuffled(g, 2), Budget(5))


# ---------------------------------------------------------------- dispatch


def test_dispatch():
    g = cycle(5)
    h = shuffled(g, 9)
    for algo in ("auto", "gem", "cop32k1", "general", "oracle"):
        r = isomorphic(g, h, algo)
        assert isinstance(r, IsoResult) and r.isomorphic
    assert isomorphic(complete(3), shuffled(complete(3), 1)).algorithm == "cograph"
    with pytest.raises(ValueError):
        isomorphic(g, h, "magic")
    j = isomorphic(g, h, "oracle").to_json()
    assert j["isomorphic"] and "witness" in j
