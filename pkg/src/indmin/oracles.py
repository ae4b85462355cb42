"""Brute-force reference implementations.

These are the ground truth the polynomial algorithms are checked against.
They are exponential and only meant for small inputs; every search runs under
a :class:`~indmin.budget.Budget` and raises ``BudgetExhausted`` instead of
hanging.  Soft scale caps:

* ``iso_bruteforce``: about 40 vertices (more if refinement separates well)
* minor searches: ``|V(G)| <= 12``, or ``|V(H)| <= 5`` with a small ``G``
* ``has_induced_subgraph``: ``|V(H)| <= 8``
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

from .budget import Budget, ensure
from .cotree import try_cotree
from .graph import (
    ColoredGraph,
    Graph,
    _bits,
    as_colored,
    complement,
    component_masks,
    disjoint_union,
    refine_colors,
    to_mask,
)

ISO_SCALE = 40
MINOR_SCALE = 12
INDUCED_SUBGRAPH_SCALE = 8
P4_BRUTE_SCALE = 16

Mapping = Dict[int, int]


# ------------------------------------------------------------------ isomorphism


def iso_bruteforce(g1, g2, budget: Optional[Budget] = None) -> Optional[Mapping]:
    """An isomorphism ``g1 -> g2`` as a dict, or None.

    Accepts plain or colored graphs; with colors, the mapping preserves them.
    Backtracking over a joint color-refinement partition, checking adjacency
    against every previously mapped vertex.
    """
    budget = ensure(budget)
    c1, c2 = as_colored(g1), as_colored(g2)
    a, b = c1.graph, c2.graph
    if a.n != b.n or a.m != b.m:
        return None
    n = a.n
    if n == 0:
        return {}
    joint = refine_colors(disjoint_union(a, b), list(c1.colors) + list(c2.colors))
    col1, col2 = joint[:n], joint[n:]
    if sorted(col1) != sorted(col2):
        return None
    cells: Dict[int, List[int]] = {}
    for w in range(n):
        cells.setdefault(col2[w], []).append(w)

    order = _search_order(a, col1)
    pos = {v: i for i, v in enumerate(order)}
    prev_nbrs = [[u for u in a.adj[v] if pos[u] < pos[v]] for v in order]
    prev_all = [to_mask(order[:i]) for i in range(n)]
    mapping = [-1] * n
    used = [False] * n

    def image_mask(vs):
        m = 0
        for u in vs:
            m |= 1 << mapping[u]
        return m

    def extend(i):
        if i == n:
            return True
        v = order[i]
        want = image_mask(prev_nbrs[i])
        img_prev = image_mask(_bits(prev_all[i]))
        for w in cells[col1[v]]:
            if used[w]:
                continue
            budget.spend()
            if b.masks[w] & img_prev != want:
                continue
            mapping[v] = w
            used[w] = True
            if extend(i + 1):
                return True
            used[w] = False
        mapping[v] = -1
        return False

    if extend(0):
        return {v: mapping[v] for v in range(n)}
    return None


def _search_order(g: Graph, col):
    # grow along edges of whichever of G and its complement is sparser
    if 4 * g.m > g.n * (g.n - 1):
        g = complement(g)
    sizes: Dict[int, int] = {}
    for c in col:
        sizes[c] = sizes.get(c, 0) + 1
    order: List[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        v = min(remaining, key=lambda x: (-bin(g.masks[x] & placed).count("1"), sizes[col[x]], x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def is_isomorphism(g1, g2, mapping: Mapping) -> bool:
    """Independent check that ``mapping`` is a (color-preserving) isomorphism."""
    c1, c2 = as_colored(g1), as_colored(g2)
    a, b = c1.graph, c2.graph
    if a.n != b.n or sorted(mapping) != list(range(a.n)):
        return False
    if sorted(mapping.values()) != list(range(b.n)):
        return False
    if any(c1.colors[v] != c2.colors[mapping[v]] for v in range(a.n)):
        return False
    return all(a.has_edge(u, v) == b.has_edge(mapping[u], mapping[v]) for u, v in combinations(range(a.n), 2))


# ------------------------------------------------------------------ minor models


@dataclass(frozen=True)
class MinorModel:
    """Bags witnessing a (possibly induced) minor: bag ``i`` realizes pattern
    vertex ``i``."""

    bags: Tuple[FrozenSet[int], ...]
    induced: bool

    @property
    def is_compact(self) -> bool:
        return all(len(b) <= 2 for b in self.bags)

    def vertices(self) -> FrozenSet[int]:
        return frozenset().union(*self.bags) if self.bags else frozenset()

    def mdeg(self, g: Graph) -> Dict[int, int]:
        """For each bag vertex, the number of *other* bags it has a neighbor in."""
        out = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                out[v] = sum(1 for j, other in enumerate(self.bags) if j != i and g.adj[v] & other)
        return out

    def to_json(self):
        return {"bags": [sorted(b) for b in self.bags], "induced": self.induced}


def model_violations(g: Graph, h: Graph, model: MinorModel) -> List[str]:
    """Everything wrong with ``model`` as an ``h``-model in ``g`` (empty if valid)."""
    problems = []
    if len(model.bags) != h.n:
        return [f"expected {h.n} bags, got {len(model.bags)}"]
    seen = set()
    for i, bag in enumerate(model.bags):
        if not bag:
            problems.append(f"bag {i} is empty")
            continue
        if any(not 0 <= v < g.n for v in bag):
            problems.append(f"bag {i} has out-of-range vertices")
            continue
        if seen & bag:
            problems.append(f"bag {i} overlaps an earlier bag")
        seen |= bag
        if len(component_masks(g, to_mask(bag))) != 1:
            problems.append(f"bag {i} is not connected")
    if problems:
        return problems
    for i, j in combinations(range(h.n), 2):
        touching = any(g.adj[v] & model.bags[j] for v in model.bags[i])
        if h.has_edge(i, j) and not touching:
            problems.append(f"pattern edge {i}-{j} has no bag edge")
        if model.induced and not h.has_edge(i, j) and touching:
            problems.append(f"pattern non-edge {i}-{j} has a bag edge")
    return problems


def is_valid_model(g: Graph, h: Graph, model: MinorModel) -> bool:
    return not model_violations(g, h, model)


def connected_subsets(g: Graph, budget: Optional[Budget] = None) -> List[int]:
    """All connected vertex subsets of ``g`` as bitmasks (ESU enumeration)."""
    budget = ensure(budget)
    masks = g.masks
    out: List[int] = []
    for v in range(g.n):
        higher = ~((1 << (v + 1)) - 1)
        start = 1 << v
        stack = [(start, start | masks[v], masks[v] & higher)]
        while stack:
            sub, closed, ext = stack.pop()
            out.append(sub)
            budget.spend()
            while ext:
                w = ext & -ext
                ext ^= w
                wi = w.bit_length() - 1
                stack.append((sub | w, closed | masks[wi], ext | (masks[wi] & higher & ~closed)))
    return out


def _open_nbhd(masks, s):
    nb = 0
    for w in _bits(s):
        nb |= masks[w]
    return nb & ~s


def _pattern_order(h: Graph) -> List[int]:
    if h.n == 0:
        return []
    last = max(range(h.n), key=lambda v: (h.degree(v), -v))
    rest = [v for v in range(h.n) if v != last]
    order: List[int] = []
    placed = set()
    while len(order) < len(rest):
        frontier = [v for v in rest if v not in placed and h.adj[v] & placed]
        if not frontier:
            frontier = [v for v in rest if v not in placed]
        v = max(frontier, key=lambda x: (len(h.adj[x] & placed), h.degree(x), -x))
        order.append(v)
        placed.add(v)
    return order + [last]


def _model_search(g: Graph, h: Graph, induced: bool, budget: Budget) -> Optional[MinorModel]:
    k = h.n
    if k == 0:
        return MinorModel((), induced)
    if k > g.n:
        return None
    if h.m > g.m and not induced:
        return None
    masks = g.masks
    full = (1 << g.n) - 1
    subsets = connected_subsets(g, budget)
    subsets.sort(key=lambda s: (bin(s).count("1"), s))
    nbhd = {s: _open_nbhd(masks, s) for s in subsets}
    by_vertex: Dict[int, List[int]] = {v: [] for v in range(g.n)}
    for s in subsets:
        for v in _bits(s):
            by_vertex[v].append(s)

    order = _pattern_order(h)
    adj_before = []
    non_before = []
    for i, p in enumerate(order):
        earlier = order[:i]
        adj_before.append([j for j, q in enumerate(earlier) if h.has_edge(p, q)])
        non_before.append([j for j, q in enumerate(earlier) if not h.has_edge(p, q)])
    bags = [0] * k

    def region(i, free):
        avail = free
        if induced:
            for j in non_before[i]:
                avail &= ~nbhd[bags[j]]
        return avail

    def lookahead(i, free):
        if bin(free).count("1") < k - i:
            return False
        for t in range(i, k):
            avail = free
            if induced:
                for j in non_before[t]:
                    if j < i:
                        avail &= ~nbhd[bags[j]]
            if not avail:
                return False
            for j in adj_before[t]:
                if j < i and not (nbhd[bags[j]] & avail):
                    return False
        return True

    def place_last(free):
        i = k - 1
        avail = region(i, free)
        for comp in component_masks(g, avail):
            budget.spend()
            if all(nbhd[bags[j]] & comp for j in adj_before[i]):
                return comp
        return 0

    def candidates(i, avail):
        singleton = h.degree(order[i]) <= 1
        if adj_before[i]:
            anchor = nbhd[bags[adj_before[i][0]]] & avail
            for v in _bits(anchor):
                low_v = 1 << v
                for s in by_vertex[v]:
                    if s & ~avail:
                        continue
                    if singleton and s != low_v:
                        continue
                    hit = s & anchor
                    if hit & -hit != low_v:
                        continue
                    yield s
        else:
            for s in subsets:
                if singleton and s & (s - 1):
                    break
                if not s & ~avail:
                    yield s

    def extend(i, free):
        if i == k - 1:
            last = place_last(free)
            if last:
                bags[i] = last
                return True
            return False
        avail = region(i, free)
        for s in candidates(i, avail):
            budget.spend()
            ns = nbhd[s]
            if any(not (ns & bags[j]) for j in adj_before[i]):
                continue
            bags[i] = s
            nfree = free & ~s
            if lookahead(i + 1, nfree) and extend(i + 1, nfree):
                return True
        return False

    if not lookahead(0, full) or not extend(0, full):
        return None
    result = [frozenset()] * k
    for i, p in enumerate(order):
        result[p] = frozenset(_bits(bags[i]))
    return MinorModel(tuple(result), induced)


def induced_minor_bruteforce(g: Graph, h: Graph, budget: Optional[Budget] = None) -> Optional[MinorModel]:
    """An induced-minor model of ``h`` in ``g``, or None."""
    return _model_search(g, h, True, ensure(budget))


def minor_bruteforce(g: Graph, h: Graph, budget: Optional[Budget] = None) -> Optional[MinorModel]:
    """A minor model of ``h`` in ``g`` (no non-adjacency constraint), or None."""
    return _model_search(g, h, False, ensure(budget))


# ---------------------------------------------------------- induced subgraphs


def find_induced_subgraph(g: Graph, h: Graph, budget: Optional[Budget] = None) -> Optional[Mapping]:
    """An embedding ``V(h) -> V(g)`` whose image induces a copy of ``h``."""
    budget = ensure(budget)
    if h.n > g.n:
        return None
    if h.n == 0:
        return {}
    order = _search_order(h, [0] * h.n)
    pos = {v: i for i, v in enumerate(order)}
    prev = [[u for u in range(h.n) if pos[u] < pos[v]] for v in order]
    img = [-1] * h.n
    used = 0

    def extend(i):
        nonlocal used
        if i == h.n:
            return True
        v = order[i]
        for w in range(g.n):
            if (used >> w) & 1:
                continue
            budget.spend()
            gw = g.masks[w]
            if any(((gw >> img[u]) & 1) != h.has_edge(u, v) for u in prev[i]):
                continue
            img[v] = w
            used |= 1 << w
            if extend(i + 1):
                return True
            used &= ~(1 << w)
        img[v] = -1
        return False

    return {v: img[v] for v in range(h.n)} if extend(0) else None


def has_induced_subgraph(g: Graph, h: Graph, budget: Optional[Budget] = None) -> bool:
    return find_induced_subgraph(g, h, budget) is not None


def is_induced_embedding(g: Graph, h: Graph, emb: Mapping) -> bool:
    """Check an embedding returned by :func:`find_induced_subgraph`."""
    if sorted(emb) != list(range(h.n)) or len(set(emb.values())) != h.n:
        return False
    return all(h.has_edge(u, v) == g.has_edge(emb[u], emb[v]) for u, v in combinations(range(h.n), 2))


# --------------------------------------------------------------------------- P4


def find_induced_p4(g: Graph) -> Optional[Tuple[int, int, int, int]]:
    """An induced P4 by scanning all 4-subsets, in path order."""
    for quad in combinations(range(g.n), 4):
        deg = {v: sum(1 for w in quad if g.has_edge(v, w)) for v in quad}
        if sum(deg.values()) != 6 or sorted(deg.values()) != [1, 1, 2, 2]:
            continue
        start = next(v for v in quad if deg[v] == 1)
        path = [start]
        while len(path) < 4:
            path.append(next(w for w in quad if g.has_edge(path[-1], w) and w not in path))
        return tuple(path)
    return None


def is_p4_free(g: Graph) -> bool:
    """No induced P4.  All 4-subsets up to ``P4_BRUTE_SCALE`` vertices, cotree
    recursion above."""
    if g.n <= P4_BRUTE_SCALE:
        return find_induced_p4(g) is None
    return try_cotree(g) is not None
