import random

import networkx as nx
import pytest
from hypothesis import given

from helpers import atlas, atlas_n, graph_and_perm, graphs, nx_isomorphic, to_nx
from indmin.budget import Budget, BudgetExhausted
from indmin.graph import ColoredGraph, relabel
from indmin.named import (
    claw,
    complete,
    complete_bipartite,
    cycle,
    gem,
    k3_k1,
    kite,
    path,
    petersen,
    prism,
)
from indmin.oracles import (
    MinorModel,
    find_induced_p4,
    has_induced_subgraph,
    induced_minor_bruteforce,
    is_isomorphism,
    is_p4_free,
    is_valid_model,
    iso_bruteforce,
    minor_bruteforce,
    model_violations,
)


def test_iso_examples():
    m = iso_bruteforce(cycle(5), cycle(5))
    assert m is not None and is_isomorphism(cycle(5), cycle(5), m)
    assert iso_bruteforce(path(4), claw()) is None
    assert iso_bruteforce(complete_bipartite(3, 3), prism()) is None


def test_iso_respects_colors():
    a = ColoredGraph(path(3), (0, 1, 0))
    b = ColoredGraph(path(3), (1, 0, 0))
    assert iso_bruteforce(a, b) is None
    c = ColoredGraph(path(3), (0, 1, 0))
    assert iso_bruteforce(a, c) is not None


@given(graph_and_perm(max_n=9))
def test_iso_equivalence(gp):
    g, perm = gp
    assert iso_bruteforce(g, g) is not None
    h = relabel(g, perm)
    m = iso_bruteforce(g, h)
    assert m is not None and is_isomorphism(g, h, m)


@given(graphs(max_n=7), graphs(max_n=7))
def test_iso_agrees_with_networkx(g1, g2):
    ours = iso_bruteforce(g1, g2) is not None
    assert ours == (iso_bruteforce(g2, g1) is not None)
    assert ours == nx_isomorphic(g1, g2)


def test_minor_examples():
    m = induced_minor_bruteforce(cycle(5), complete(3))
    assert m is not None and m.induced and is_valid_model(cycle(5), complete(3), m)
    m = induced_minor_bruteforce(k3_k1(), k3_k1())
    assert m is not None and all(len(b) == 1 for b in m.bags)
    assert induced_minor_bruteforce(prism(), k3_k1()) is None
    m = minor_bruteforce(petersen(), complete(5))
    assert m is not None and is_valid_model(petersen(), complete(5), m)
    assert minor_bruteforce(cycle(5), complete(4)) is None
    assert minor_bruteforce(complete(4), complete(4)) is not None


def test_model_validator_catches_errors():
    g = path(4)
    h = complete(2)
    assert model_violations(g, h, MinorModel((frozenset({0}), frozenset({2})), False))
    assert model_violations(g, h, MinorModel((frozenset({0, 2}), frozenset({3})), False))
    assert not model_violations(g, h, MinorModel((frozenset({0, 1}), frozenset({2})), False))
    # induced: the non-edge of 2K1 must stay a non-edge
    two = relabel(complete(2), [0, 1])
    from indmin.named import empty

    assert model_violations(g, empty(2), MinorModel((frozenset({0}), frozenset({1})), True))
    assert not model_violations(g, empty(2), MinorModel((frozenset({0}), frozenset({2})), True))
    assert two.m == 1


def test_p4_examples():
    assert is_p4_free(complete(4))
    assert not is_p4_free(path(4))
    assert not is_p4_free(cycle(5))
    assert find_induced_p4(cycle(5)) is not None


def test_induced_subgraph_examples():
    assert has_induced_subgraph(gem(), path(4))
    assert not has_induced_subgraph(complete(5), k3_k1())
    assert has_induced_subgraph(kite(), k3_k1())


@given(graphs(max_n=7), graphs(min_n=1, max_n=4))
def test_induced_subgraph_matches_networkx(g, h):
    from networkx.algorithms.isomorphism import GraphMatcher

    ours = has_induced_subgraph(g, h)
    theirs = GraphMatcher(to_nx(g), to_nx(h)).subgraph_is_isomorphic()
    assert ours == theirs


@given(graphs(max_n=8), graphs(min_n=1, max_n=4))
def test_minor_models_valid_and_monotone(g, h):
    im = induced_minor_bruteforce(g, h)
    if im is not None:
        assert im.induced and is_valid_model(g, h, im)
        assert minor_bruteforce(g, h) is not None
    m = minor_bruteforce(g, h)
    if m is not None:
        assert is_valid_model(g, h, m)


def test_induced_subgraph_implies_induced_minor():
    rng = random.Random(11)
    pats = [g for g in atlas() if 1 <= g.n <= 4]
    for g in rng.sample([g for g in atlas() if g.n == 7], 60) + atlas_n(5):
        for h in pats:
            if has_induced_subgraph(g, h):
                assert induced_minor_bruteforce(g, h) is not None


@given(graphs(max_n=8))
def test_p4_free_agrees(g):
    from networkx.algorithms.isomorphism import GraphMatcher

    has = GraphMatcher(to_nx(g), to_nx(path(4))).subgraph_is_isomorphic()
    assert is_p4_free(g) == (not has)


def test_budget_exhaustion_is_distinct():
    with pytest.raises(BudgetExhausted):
        induced_minor_bruteforce(petersen(), complete(5), Budget(10))
    with pytest.raises(BudgetExhausted):
        iso_bruteforce(petersen(), relabel(petersen(), list(range(9, -1, -1))), Budget(3))


def test_budget_env_override(monkeypatch):
    from indmin.budget import default_limit

    monkeypatch.setenv("INDMIN_BUDGET", "123")
    assert default_limit() == 123 and Budget().limit == 123
    monkeypatch.setenv("INDMIN_BUDGET", "x")
    with pytest.raises(ValueError):
        default_limit()
