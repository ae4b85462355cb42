"""Immutable simple graphs on dense integer vertices, and the elementary
transforms used throughout the package.

Vertices are always ``0 .. n-1``.  Every transform returns a new graph; when a
transform adds or removes vertices, the index mapping is either documented
below or returned alongside the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

Edge = Tuple[int, int]


class Graph:
    """A simple undirected graph with vertices ``0 .. n-1``.

    Instances are immutable values: equality and hashing go by ``(n, adj)``.
    ``masks[v]`` is the neighborhood of ``v`` as an int bitmask, which the
    search kernels use heavily.
    """

    __slots__ = ("n", "adj", "masks", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._set(n, tuple(frozenset(s) for s in nbrs))

    def _set(self, n, adj):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        masks = []
        for s in adj:
            m = 0
            for w in s:
                m |= 1 << w
            masks.append(m)
        object.__setattr__(self, "masks", tuple(masks))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        """Build from per-vertex neighbor collections; checks symmetry."""
        n = len(adj)
        sets = tuple(frozenset(a) for a in adj)
        for u, s in enumerate(sets):
            for w in s:
                if not 0 <= w < n or w == u or u not in sets[w]:
                    raise ValueError(f"adjacency not symmetric/simple at ({u}, {w})")
        g = cls.__new__(cls)
        g._set(n, sets)
        return g

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        n = len(masks)
        adj = []
        for m in masks:
            adj.append(frozenset(_bits(m)))
        return cls.from_adjacency(adj)

    # ------------------------------------------------------------------ queries

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def edges(self) -> List[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> List[int]:
        return [len(s) for s in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def vertices(self) -> range:
        return range(self.n)

    # ------------------------------------------------------------------ dunder

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.masks))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def __reduce__(self):
        return (Graph, (self.n, self.edges()))


@dataclass(frozen=True)
class ColoredGraph:
    """A graph with a non-negative integer color per vertex."""

    graph: Graph
    colors: Tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != self.graph.n:
            raise ValueError("one color per vertex required")
        if any((not isinstance(c, int)) or c < 0 for c in self.colors):
            raise ValueError("colors must be non-negative integers")

    @classmethod
    def uniform(cls, g: Graph) -> "ColoredGraph":
        return cls(g, (0,) * g.n)

    @classmethod
    def from_labels(cls, g: Graph, labels: Sequence[Hashable]) -> "ColoredGraph":
        """Map arbitrary sortable labels to contiguous ids (sorted order)."""
        ids = {c: i for i, c in enumerate(sorted(set(labels)))}
        return cls(g, tuple(ids[c] for c in labels))

    def normalized(self) -> "ColoredGraph":
        return ColoredGraph.from_labels(self.graph, self.colors)

    @property
    def n(self) -> int:
        return self.graph.n


def as_colored(g) -> ColoredGraph:
    if isinstance(g, ColoredGraph):
        return g
    return ColoredGraph.uniform(g)


# ---------------------------------------------------------------------- helpers


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> List[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    return list(_bits(mask))


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ------------------------------------------------------------------- transforms


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph.from_masks([full & ~m & ~(1 << v) for v, m in enumerate(g.masks)])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """``G[S]`` with vertices renumbered by increasing original index."""
    order = sorted(set(vertices))
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[w]) for u in order for w in g.adj[u] if w in index and u < w]
    return Graph(len(order), edges)


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    """``G - S``, renumbered like :func:`induced_subgraph`."""
    drop = set(vertices)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Vertices of ``g2`` are shifted by ``g1.n``."""
    off = g1.n
    return Graph(off + g2.n, g1.edges() + [(u + off, v + off) for u, v in g2.edges()])


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Vertex ``v`` of ``g`` becomes ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def subdivide_edges(g: Graph, k: int) -> Tuple[Graph, List[tuple]]:
    """Replace every edge by a path with ``k`` new internal vertices.

    Original vertices keep their indices.  Edges are processed in sorted
    order; the internal vertices of edge ``(u, v)`` (``u < v``) are numbered
    consecutively starting next to ``u``.  The returned tag list has
    ``("orig", v)`` or ``("sub", (u, v), i)`` per vertex, ``i`` in ``1..k``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    tags: List[tuple] = [("orig", v) for v in range(g.n)]
    if k == 0:
        return g, tags
    edges = []
    nxt = g.n
    for u, v in g.edges():
        prev = u
        for i in range(1, k + 1):
            tags.append(("sub", (u, v), i))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(nxt, edges), tags


def local_complement(g: Graph, v: int) -> Graph:
    """Complement the edges inside ``N(v)``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    nv = g.masks[v]
    masks = list(g.masks)
    for w in _bits(nv):
        masks[w] = masks[w] ^ (nv & ~(1 << w))
    return Graph.from_masks(masks)


def contract_edge(g: Graph, u: int, v: int) -> Tuple[Graph, List[int]]:
    """Contract the edge ``{u, v}``.

    The merged vertex takes index ``min(u, v)``; vertices above ``max(u, v)``
    shift down by one.  Returns the new graph and ``mapping[old] = new``.
    """
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    keep, gone = min(u, v), max(u, v)
    mapping = [i if i < gone else i - 1 for i in range(g.n)]
    mapping[gone] = keep
    edges = set()
    for a, b in g.edges():
        x, y = mapping[a], mapping[b]
        if x != y:
            edges.add((min(x, y), max(x, y)))
    return Graph(g.n - 1, edges), mapping


# ------------------------------------------------------------------ connectivity


def component_masks(g: Graph, within: Optional[int] = None) -> List[int]:
    """Connected components of ``G[within]`` as bitmasks (all of G by default)."""
    rest = (1 << g.n) - 1 if within is None else within
    masks = g.masks
    out = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nb = 0
            for w in _bits(frontier):
                nb |= masks[w]
            frontier = nb & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def components(g: Graph) -> List[List[int]]:
    return [bits(c) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def is_connected_set(g: Graph, mask: int) -> bool:
    return mask != 0 and len(component_masks(g, mask)) == 1


def is_2connected(g: Graph) -> bool:
    """At least three vertices, connected, and no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    full = (1 << g.n) - 1
    return all(len(component_masks(g, full & ~(1 << v))) == 1 for v in range(g.n))


def neighborhood_mask(g: Graph, mask: int) -> int:
    """``N(M)``: vertices outside ``mask`` with a neighbor inside it."""
    nb = 0
    for w in _bits(mask):
        nb |= g.masks[w]
    return nb & ~mask


def find_cycle(g: Graph, within: Optional[int] = None) -> Optional[List[int]]:
    """Some cycle of ``G[within]`` as a vertex list, or None if it is a forest."""
    allowed = (1 << g.n) - 1 if within is None else within
    parent: Dict[int, int] = {}
    for root in _bits(allowed):
        if root in parent:
            continue
        parent[root] = -1
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if not (allowed >> y) & 1 or y == parent[x]:
                    continue
                if y in parent:
                    # tree path x..lca..y closes a cycle
                    return _tree_cycle(parent, x, y)
                parent[y] = x
                stack.append(y)
    return None


def _tree_cycle(parent, x, y):
    up_x = [x]
    while parent[up_x[-1]] != -1:
        up_x.append(parent[up_x[-1]])
    seen = {v: i for i, v in enumerate(up_x)}
    path_y = [y]
    while path_y[-1] not in seen:
        path_y.append(parent[path_y[-1]])
    lca = path_y[-1]
    return up_x[: seen[lca] + 1] + list(reversed(path_y[:-1]))


# ----------------------------------------------------------------------- blocks


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal 2-connected pieces, bridges, isolated vertices) and
    the block-cut tree.

    ``tree_edges`` pairs a block index with a cut vertex lying in it.
    """

    blocks: Tuple[FrozenSet[int], ...]
    cut_vertices: FrozenSet[int]
    tree_edges: Tuple[Tuple[int, int], ...]

    def blocks_of(self, v: int) -> List[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components by the iterative low-point DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    found: List[FrozenSet[int]] = []
    cuts = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            disc[root] = t
            t += 1
            found.append(frozenset([root]))
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        edge_stack: List[Edge] = []
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (parent, u):
                        break
                found.append(frozenset(comp))
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    found.sort(key=lambda b: sorted(b))
    tree_edges = tuple((i, v) for i, b in enumerate(found) for v in sorted(b) if v in cuts)
    return BlockDecomposition(tuple(found), frozenset(cuts), tree_edges)


def refine_colors(g: Graph, colors: Sequence[Hashable]) -> List[int]:
    """Stable 1-dimensional Weisfeiler-Leman coloring.

    Output colors are canonical ids: they depend only on the input coloring
    and the graph up to isomorphism, so refining a disjoint union keeps the
    two halves comparable.
    """
    ids = {c: i for i, c in enumerate(sorted(set(colors), key=repr))}
    cur = [ids[c] for c in colors]
    ncls = len(ids)
    while True:
        sigs = [(cur[v], tuple(sorted(cur[w] for w in g.adj[v]))) for v in range(g.n)]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        nxt = [table[s] for s in sigs]
        if len(table) == ncls:
            return nxt
        cur, ncls = nxt, len(table)


# -------------------------------------------------------------------- formats


def _n_bytes(n: int) -> List[int]:
    if n < 63:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def to_graph6(g: Graph, header: bool = False) -> str:
    """Encode in graph6 (upper triangle, column by column)."""
    out = _n_bytes(g.n)
    acc, nacc = 0, 0
    for j in range(1, g.n):
        mj = g.masks[j]
        for i in range(j):
            acc = (acc << 1) | ((mj >> i) & 1)
            nacc += 1
            if nacc == 6:
                out.append(acc)
                acc, nacc = 0, 0
    if nacc:
        out.append(acc << (6 - nacc))
    text = "".join(chr(b + 63) for b in out)
    return (">>graph6<<" + text) if header else text


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in s]
    if not data or any(not 0 <= b < 64 for b in data):
        raise ValueError("invalid graph6 string")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] < 63:
        if len(data) < 4:
            raise ValueError("truncated graph6 size field")
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
    else:
        if len(data) < 8:
            raise ValueError("truncated graph6 size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        pos = 8
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list needs an 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise ValueError(f"header says {m} edges, found {len(edges)}")
    g = Graph(n, edges)
    if g.m != m:
        raise ValueError("duplicate edges in edge list")
    return g
