"""Seeded random instance generators.

Every generator takes an explicit ``random.Random`` (or a seed) so output is
reproducible.  Families with a class promise say how it is kept: by
construction, or by rejection against the brute-force oracle.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Union

from .graph import Graph, is_2connected, is_connected, relabel
from .named import complete_multipartite, gem
from .oracles import induced_minor_bruteforce
from .reductions import reduce_to_k3uk1_free

Rng = Union[random.Random, int, None]
FAMILIES = ("random", "cograph", "gemfree-suture", "k3uk1-free-via-reduction", "multipartite")
MAX_N = {"random": 200, "cograph": 200, "gemfree-suture": 40, "k3uk1-free-via-reduction": 8, "multipartite": 64}


class GenerationFailed(RuntimeError):
    pass


def rng_of(seed: Rng) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(0 if seed is None else seed)


def random_graph(n: int, p: float = 0.5, seed: Rng = None) -> Graph:
    rng = rng_of(seed)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def shuffled(g: Graph, seed: Rng = None) -> Graph:
    rng = rng_of(seed)
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm)


def random_cograph(n: int, seed: Rng = None, connected: bool = False) -> Graph:
    """Random cotree: split the vertex range, recurse, union or join."""
    rng = rng_of(seed)
    if n <= 0:
        return Graph(0)
    edges: List[tuple] = []

    def build(lo, hi, join):
        if hi - lo == 1:
            return
        cut = rng.randint(lo + 1, hi - 1)
        if join:
            edges.extend((u, v) for u in range(lo, cut) for v in range(cut, hi))
        build(lo, cut, rng.random() < 0.5)
        build(cut, hi, rng.random() < 0.5)

    build(0, n, True if connected else rng.random() < 0.5)
    return shuffled(Graph(n, edges), rng)


def random_min_degree(n: int, k: int = 3, seed: Rng = None, p: float = 0.5) -> Graph:
    """Random graph with minimum degree at least ``k`` (rejection)."""
    rng = rng_of(seed)
    if n <= k:
        raise ValueError("need n > k")
    for _ in range(10_000):
        g = random_graph(n, p, rng)
        if g.min_degree() >= k:
            return g
    raise GenerationFailed("no graph with the requested minimum degree")


def random_cubic(n: int, seed: Rng = None) -> Graph:
    """Random simple 3-regular graph by the pairing model with restarts."""
    rng = rng_of(seed)
    if n % 2 or n < 4:
        raise ValueError("cubic graphs need an even n >= 4")
    for _ in range(10_000):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = {tuple(sorted(points[i:i + 2])) for i in range(0, len(points), 2)}
        if len(pairs) == 3 * n // 2 and all(u != v for u, v in pairs):
            return Graph(n, pairs)
    raise GenerationFailed("pairing model kept failing")


def multipartite(parts: Sequence[int], seed: Rng = None) -> Graph:
    g = complete_multipartite(parts)
    return g if seed is None else shuffled(g, seed)


def k3uk1_free_via_reduction(n: int, seed: Rng = None) -> Graph:
    """Reduction output of a random cubic graph on ``n`` vertices."""
    return reduce_to_k3uk1_free(random_cubic(n, seed))


def suture_candidate(n: int, rng: random.Random) -> Graph:
    """A cycle or path H with a connected cograph hung off a few H vertices
    through internally disjoint paths.  Not gem-free by itself."""
    k = rng.randint(2, max(2, min(4, n // 3)))
    size = rng.randint(1, max(1, n - 3 - k))
    cog = random_cograph(size, rng, connected=True)
    h_len = n - size
    links = []
    budget = h_len - max(3, k)
    for _ in range(k):
        extra = rng.randint(0, max(0, budget)) if rng.random() < 0.5 else 0
        extra = min(extra, budget)
        budget -= extra
        links.append(extra)
    h_len = n - size - sum(links)
    edges = [(i, i + 1) for i in range(h_len - 1)]
    if h_len >= 3 and rng.random() < 0.8:
        edges.append((h_len - 1, 0))
    spots = sorted(rng.sample(range(h_len), min(k, h_len)))
    base = h_len
    edges += [(base + u, base + v) for u, v in cog.edges()]
    nxt = base + size
    for spot, extra in zip(spots, links):
        prev = spot
        for _ in range(extra):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, base + rng.randrange(size)))
    return shuffled(Graph(nxt, edges), rng)


def is_gem_free(g: Graph) -> bool:
    return induced_minor_bruteforce(g, gem()) is None


def gemfree_suture(n: int, seed: Rng = None, tries: int = 2_000, require_2connected: bool = True) -> Graph:
    """Random 2-connected gem-induced-minor-free graph built as a suture.

    Candidates are certified by the brute-force oracle, so ``n`` is capped
    by how far the oracle stays fast.
    """
    rng = rng_of(seed)
    if n < 3:
        raise ValueError("need n >= 3")
    if n > MAX_N["gemfree-suture"]:
        raise ValueError(f"n above cap {MAX_N['gemfree-suture']}")
    for _ in range(tries):
        g = suture_candidate(n, rng)
        if require_2connected and not is_2connected(g):
            continue
        if is_gem_free(g):
            return g
    raise GenerationFailed("no gem-free suture found within the try limit")


def glue_blocks(parts: Sequence[Graph], seed: Rng = None) -> Graph:
    """Glue connected graphs into one, each new part sharing one vertex
    with the graph built so far (so the parts become unions of blocks)."""
    rng = rng_of(seed)
    if not parts:
        return Graph(0)
    acc = parts[0]
    for part in parts[1:]:
        if not is_connected(part):
            raise ValueError("parts must be connected")
        at = rng.randrange(acc.n)
        mine = rng.randrange(part.n)
        # vertex `mine` of the new part is identified with `at`
        order = [v for v in range(part.n) if v != mine]
        index = {v: acc.n + i for i, v in enumerate(order)}
        index[mine] = at
        acc = Graph(acc.n + part.n - 1, acc.edges() + [(index[u], index[v]) for u, v in part.edges()])
    return shuffled(acc, rng)


def generate(family: str, n: int, seed: Rng = None, parts: Optional[Sequence[int]] = None) -> Graph:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "multipartite":
        parts = list(parts) if parts else [2] * max(1, n // 2)
        if sum(parts) > MAX_N[family]:
            raise ValueError(f"n above cap {MAX_N[family]}")
        return multipartite(parts, seed)
    if n > MAX_N[family]:
        raise ValueError(f"n above cap {MAX_N[family]}")
    if family == "random":
        return random_graph(n, 0.5, seed)
    if family == "cograph":
        return random_cograph(n, seed)
    if family == "gemfree-suture":
        return gemfree_suture(n, seed)
    return k3uk1_free_via_reduction(n, seed)

