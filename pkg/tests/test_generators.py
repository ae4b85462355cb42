import pytest

from indmin.generators import (
    FAMILIES,
    generate,
    gemfree_suture,
    glue_blocks,
    is_gem_free,
    k3uk1_free_via_reduction,
    multipartite,
    random_cograph,
    random_cubic,
    random_min_degree,
)
from indmin.graph import blocks, from_graph6, is_2connected, is_connected, to_graph6
from indmin.named import complete, k2_k1, path
from indmin.oracles import has_induced_subgraph, is_p4_free
from indmin.structure import find_compact_clique_minor, k3uk1_induced_minor_free


@pytest.mark.parametrize("family", FAMILIES)
def test_deterministic_and_round_trip(family):
    n = 6 if family == "k3uk1-free-via-reduction" else 9
    a = generate(family, n, 1)
    b = generate(family, n, 1)
    assert a == b
    assert from_graph6(to_graph6(a)) == a


def test_cograph_family():
    for seed in range(20):
        assert is_p4_free(generate("cograph", 6 + seed, seed))
    assert is_connected(random_cograph(10, 3, connected=True))


def test_multipartite_family():
    g = generate("multipartite", 16, 5, [2] * 8)
    assert not has_induced_subgraph(g, k2_k1())
    m = find_compact_clique_minor(g, 8)
    assert m is not None and m.is_compact
    assert multipartite([1, 2]).m == 2


def test_k3uk1_family():
    g = k3uk1_free_via_reduction(6, 3)
    assert g.n == 6 + 3 * 9 and k3uk1_induced_minor_free(g)


def test_cubic_and_min_degree():
    g = random_cubic(10, 4)
    assert all(d == 3 for d in g.degrees())
    assert random_min_degree(8, 3, 2).min_degree() >= 3
    with pytest.raises(ValueError):
        random_cubic(7, 1)


def test_gemfree_suture_family():
    for seed in range(8):
        g = gemfree_suture(9 + seed % 4, seed)
        assert is_2connected(g) and is_gem_free(g)


def test_glue_blocks():
    g = glue_blocks([complete(3), complete(4), path(2)], 1)
    assert g.n == 3 + 4 + 2 - 2
    assert sorted(len(b) for b in blocks(g).blocks) == [2, 3, 4]


def test_caps():
    with pytest.raises(ValueError):
        generate("gemfree-suture", 41, 1)
    with pytest.raises(ValueError):
        generate("nope", 4, 1)
    with pytest.raises(ValueError):
        generate("multipartite", 0, 1, [40, 40])
