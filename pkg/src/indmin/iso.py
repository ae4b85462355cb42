"""Isomorphism deciders.

Layers, bottom up:

* canonical certificates for colored cographs (from the cotree),
* cographs with a few apex vertices,
* the block-cut-tree reduction to 2-connected colored blocks,
* the gem-free and co-(P3 + 2K1)-free block testers,
* a general color-refinement + individualization search used as fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .budget import Budget, BudgetExhausted, ensure
from .cotree import JOIN, LEAF, NotP4Free, cotree
from .graph import (
    ColoredGraph,
    Graph,
    _bits,
    as_colored,
    blocks,
    component_masks,
    disjoint_union,
    induced_subgraph,
    refine_colors,
    to_mask,
)
from .named import k2_k1
from .oracles import has_induced_subgraph
from .structure import attachment_chains, find_compact_clique_minor, find_suture_structure, iter_suture_witnesses

BlockTester = Callable[[ColoredGraph, ColoredGraph], bool]


class ClassAssumptionViolated(RuntimeError):
    """Input is provably outside the class an algorithm was called for."""


@dataclass
class IsoResult:
    isomorphic: bool
    algorithm: str
    fallback: bool = False
    enumerated: int = 0
    witness: Optional[Dict[int, int]] = None
    branches: Dict[str, int] = field(default_factory=dict)

    def __bool__(self):
        return self.isomorphic

    def to_json(self):
        out = {
            "isomorphic": self.isomorphic,
            "algorithm": self.algorithm,
            "fallback": self.fallback,
            "enumerated": self.enumerated,
        }
        if self.branches:
            out["branches"] = dict(sorted(self.branches.items()))
        if self.witness is not None:
            out["witness"] = {str(k): v for k, v in sorted(self.witness.items())}
        return out


# ---------------------------------------------------------------- cographs


def _certificate(g: Graph, labels: Sequence[str], mask: int) -> str:
    if not mask:
        return "()"

    def walk(node):
        if node.kind == LEAF:
            return "v" + labels[node.vertex]
        tag = "J" if node.kind == JOIN else "U"
        return tag + "(" + ",".join(sorted(walk(c) for c in node.children)) + ")"

    return walk(cotree(g, mask))


def cograph_certificate(g) -> str:
    """Canonical string of a (colored) P4-free graph.

    Equal strings if and only if the colored graphs are isomorphic.  Raises
    ``NotP4Free`` otherwise.
    """
    cg = as_colored(g)
    return _certificate(cg.graph, [str(c) for c in cg.colors], (1 << cg.n) - 1)


def _apexed_certificate(g: Graph, colors: Sequence, rest: int, apices: Sequence[int]) -> str:
    labels = [""] * g.n
    for v in _bits(rest):
        profile = "".join("1" if g.has_edge(v, a) else "0" for a in apices)
        labels[v] = f"{colors[v]!r}/{profile}"
    head = [repr(colors[a]) for a in apices]
    head += ["".join("1" if g.has_edge(a, b) else "0" for b in apices) for a in apices]
    return "[" + ";".join(head) + "]" + _certificate(g, labels, rest)


def apexed_cograph_certificate(g, apices: Sequence[int]) -> str:
    """Certificate of ``g`` with the apex vertices held in the given order.

    The non-apex part must be P4-free; its vertices are colored by their
    own color and their adjacency pattern to the ordered apices.
    """
    cg = as_colored(g)
    rest = ((1 << cg.n) - 1) & ~to_mask(apices)
    return _apexed_certificate(cg.graph, cg.colors, rest, list(apices))


def iso_apexed_cograph(g1, a1: Sequence[int], g2, a2: Sequence[int]) -> bool:
    """Is there a color-preserving isomorphism ``g1 -> g2`` mapping ``a1`` onto ``a2``?

    Tries every bijection of the (at most four) apices and compares the
    certificates of the cograph parts refined by the apex adjacencies.
    """
    c1, c2 = as_colored(g1), as_colored(g2)
    if len(a1) != len(a2) or len(a1) > 4:
        raise ValueError("need equally many apices, at most four")
    if c1.n != c2.n:
        return False
    target = apexed_cograph_certificate(c1, list(a1))
    for perm in permutations(a2):
        if apexed_cograph_certificate(c2, list(perm)) == target:
            return True
    return False


# --------------------------------------------------------------- general


def find_isomorphism_general(g1, g2, budget: Optional[Budget] = None) -> Optional[Dict[int, int]]:
    """Color refinement with individualization; exact, exponential worst case."""
    budget = ensure(budget)
    c1, c2 = as_colored(g1), as_colored(g2)
    a, b = c1.graph, c2.graph
    n = a.n
    if n != b.n or a.m != b.m:
        return None
    if n == 0:
        return {}
    union = disjoint_union(a, b)

    def search(colors):
        budget.spend()
        col = refine_colors(union, colors)
        left, right = col[:n], col[n:]
        if sorted(left) != sorted(right):
            return None
        cells: Dict[int, List[int]] = {}
        for v in range(n):
            cells.setdefault(left[v], []).append(v)
        open_cells = [c for c, vs in cells.items() if len(vs) > 1]
        if not open_cells:
            where = {right[w]: w for w in range(n)}
            mapping = {v: where[left[v]] for v in range(n)}
            ok = all(b.masks[mapping[v]] == _image(a.masks[v], mapping) for v in range(n))
            return mapping if ok else None
        cell = min(open_cells, key=lambda c: (len(cells[c]), c))
        v = cells[cell][0]
        fresh = max(col) + 1
        for w in range(n):
            if right[w] != cell:
                continue
            nxt = list(col)
            nxt[v] = fresh
            nxt[n + w] = fresh
            found = search(nxt)
            if found is not None:
                return found
        return None

    return search(list(c1.colors) + list(c2.colors))


def _image(mask, mapping):
    out = 0
    for u in _bits(mask):
        out |= 1 << mapping[u]
    return out


def general_iso(g1, g2, budget: Optional[Budget] = None) -> bool:
    return find_isomorphism_general(g1, g2, budget) is not None


# ---------------------------------------------------------- block reduction


def _invariant(cg: ColoredGraph):
    g = cg.graph
    return (g.n, g.m, tuple(sorted(cg.colors)), tuple(sorted(zip(cg.colors, g.degrees()))))


class _Classes:
    """Shared class registry so both inputs get comparable ids."""

    def __init__(self, tester: BlockTester):
        self.tester = tester
        self.keys: Dict[tuple, int] = {}
        self.reps: Dict[tuple, List[Tuple[ColoredGraph, int]]] = {}
        self.color_ids: Dict[tuple, int] = {}

    def intern(self, key) -> int:
        if key not in self.keys:
            self.keys[key] = len(self.keys)
        return self.keys[key]

    def color(self, label) -> int:
        if label not in self.color_ids:
            self.color_ids[label] = len(self.color_ids)
        return self.color_ids[label]

    def block_class(self, cg: ColoredGraph) -> int:
        inv = _invariant(cg)
        bucket = self.reps.setdefault(inv, [])
        for rep, cid in bucket:
            if self.tester(rep, cg):
                return cid
        cid = self.intern(("block", len(self.keys)))
        bucket.append((cg, cid))
        return cid


def _connected_class(cg: ColoredGraph, reg: _Classes) -> int:
    g = cg.graph
    bd = blocks(g)
    nblocks = len(bd.blocks)
    # block-cut tree: nodes 0..nblocks-1 are blocks, then one per cut vertex
    cut_index = {v: nblocks + i for i, v in enumerate(sorted(bd.cut_vertices))}
    cut_of = {i: v for v, i in cut_index.items()}
    tree: Dict[int, List[int]] = {i: [] for i in range(nblocks + len(cut_index))}
    for bi, v in bd.tree_edges:
        tree[bi].append(cut_index[v])
        tree[cut_index[v]].append(bi)
    root = _tree_center(tree)
    parent = {root: -1}
    order = [root]
    for x in order:
        for y in tree[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    cls: Dict[int, int] = {}
    for node in reversed(order):
        kids = [y for y in tree[node] if parent.get(y) == node]
        if node in cut_of:
            v = cut_of[node]
            cls[node] = reg.intern(("cut", cg.colors[v], tuple(sorted(cls[k] for k in kids))))
            continue
        verts = sorted(bd.blocks[node])
        kid_cut = {cut_of[k]: cls[k] for k in kids}
        up = cut_of.get(parent[node])
        labels = []
        for v in verts:
            if v in kid_cut:
                labels.append(reg.color(("cut", kid_cut[v])))
            elif v == up:
                labels.append(reg.color(("parent", cg.colors[v])))
            else:
                labels.append(reg.color(("plain", cg.colors[v])))
        block = ColoredGraph(induced_subgraph(g, verts), tuple(labels))
        cls[node] = reg.block_class(block)
    return cls[root]


def _tree_center(tree: Dict[int, List[int]]) -> int:
    if len(tree) == 1:
        return next(iter(tree))
    degree = {x: len(ys) for x, ys in tree.items()}
    layer = [x for x, d in degree.items() if d <= 1]
    remaining = len(tree)
    removed = set()
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for x in layer:
            removed.add(x)
            for y in tree[x]:
                if y not in removed:
                    degree[y] -= 1
                    if degree[y] == 1:
                        nxt.append(y)
        layer = nxt
    left = [x for x in tree if x not in removed]
    # leaves are blocks, so diameters are even and the center is unique
    return min(left)


def _split_components(cg: ColoredGraph) -> List[ColoredGraph]:
    out = []
    for comp in component_masks(cg.graph):
        vs = list(_bits(comp))
        out.append(ColoredGraph(induced_subgraph(cg.graph, vs), tuple(cg.colors[v] for v in vs)))
    return out


def iso_via_blocks(g1, g2, block_tester: BlockTester) -> bool:
    """Decide isomorphism given a decider for colored 2-connected blocks.

    Both block-cut trees are rooted at their centers and subtrees are
    classified bottom-up; a block is compared with the tester after its
    cut vertices are recolored by the classes of the subtrees hanging there.
    Disconnected inputs are compared component class by component class.
    """
    c1, c2 = as_colored(g1), as_colored(g2)
    if _invariant(c1)[:3] != _invariant(c2)[:3]:
        return False
    reg = _Classes(block_tester)
    left = sorted(_connected_class(c, reg) for c in _split_components(c1))
    right = sorted(_connected_class(c, reg) for c in _split_components(c2))
    return left == right


# ---------------------------------------------------------- gem-free blocks


@dataclass
class _Stats:
    fallback: bool = False
    enumerated: int = 0
    witnesses: Dict[tuple, list] = field(default_factory=dict)
    branches: Dict[str, int] = field(default_factory=dict)

    def hit(self, branch: str):
        self.branches[branch] = self.branches.get(branch, 0) + 1


def _orderings(order: Tuple[int, ...], is_cycle: bool):
    k = len(order)
    if not is_cycle:
        yield order
        if k > 1:
            yield tuple(reversed(order))
        return
    for s in range(k):
        rot = order[s:] + order[:s]
        yield rot
        yield (rot[0],) + tuple(reversed(rot[1:]))


def suture_signature(cg: ColoredGraph, order: Sequence[int]) -> tuple:
    """Describe ``cg`` relative to an ordered H.

    H vertices are named by position.  Each chain vertex is named by its
    level and the names of its neighbors in the already-named set (these
    are unique because attachment is exclusive).  The residual of each
    component is summarized by an apexed cograph certificate over its named
    attachments.  Two graphs have equal signatures for orders ``o1``, ``o2``
    exactly when an isomorphism maps ``o1[i]`` to ``o2[i]`` for all ``i``.
    """
    g, colors = cg.graph, cg.colors
    hm = to_mask(order)
    full = (1 << g.n) - 1
    forms = []
    for comp in component_masks(g, full & ~hm):
        name = {v: (0, (i,)) for i, v in enumerate(order)}
        chains, residual = attachment_chains(g, hm, comp)
        anchor = hm
        chain_vs = []
        for lvl, a in enumerate(chains, 1):
            for v in _bits(a):
                name[v] = (lvl, tuple(sorted(name[x] for x in _bits(g.masks[v] & anchor))))
                chain_vs.append(v)
            anchor |= a
        items = tuple(sorted((name[v], colors[v]) for v in chain_vs))
        edges = set()
        for v in chain_vs:
            for x in _bits(g.masks[v] & anchor):
                edges.add(tuple(sorted((name[v], name[x]))))
        rnb = 0
        for v in _bits(residual):
            rnb |= g.masks[v]
        attach = sorted(_bits(rnb & anchor), key=lambda x: name[x])
        cert = _apexed_certificate(g, colors, residual, attach)
        forms.append((items, tuple(sorted(edges)), tuple(name[x] for x in attach), cert))
    return tuple(colors[v] for v in order), tuple(sorted(forms))


def _p4_free_cert(cg: ColoredGraph) -> Optional[str]:
    try:
        return cograph_certificate(cg)
    except NotP4Free:
        return None


def _gem_block_tester(stats: _Stats, budget: Budget) -> BlockTester:
    def witnesses(g: Graph, is_cycle: bool, length: int):
        key = (g, is_cycle, length)
        if key not in stats.witnesses:
            stats.witnesses[key] = list(iter_suture_witnesses(g, budget, is_cycle, length))
        return stats.witnesses[key]

    def tester(b1: ColoredGraph, b2: ColoredGraph) -> bool:
        if _invariant(b1) != _invariant(b2):
            return False
        cert1, cert2 = _p4_free_cert(b1), _p4_free_cert(b2)
        if cert1 is not None or cert2 is not None:
            stats.hit("cograph")
            return cert1 == cert2
        stats.hit("suture")
        try:
            w1 = find_suture_structure(b1.graph, budget)
            if w1 is None:
                raise LookupError("no suture witness")
            sig = suture_signature(b1, w1.h_vertices)
            for w2 in witnesses(b2.graph, w1.is_cycle, len(w1.h_vertices)):
                for order in _orderings(w2.h_vertices, w2.is_cycle):
                    stats.enumerated += 1
                    if suture_signature(b2, order) == sig:
                        return True
            return False
        except (LookupError, BudgetExhausted, RuntimeError, NotP4Free):
            stats.fallback = True
            stats.hit("fallback")
            return general_iso(b1, b2)

    return tester


def gem_free_iso(g1, g2, budget: Optional[Budget] = None) -> IsoResult:
    """Isomorphism for gem-induced-minor-free graphs.

    Correct whenever both inputs are in the class (not checked).  If the
    structure search fails on some block the general search decides that
    block instead and the result is flagged ``fallback``.
    """
    budget = ensure(budget)
    stats = _Stats()
    same = iso_via_blocks(g1, g2, _gem_block_tester(stats, budget))
    return IsoResult(same, "gem", stats.fallback, stats.enumerated, branches=stats.branches)


# ----------------------------------------------- co-(P3 + 2K1)-free blocks

COMPACT_CLIQUE = 8


def _cop_block_tester(stats: _Stats, budget: Budget) -> BlockTester:
    pattern = k2_k1()

    def tester(b1: ColoredGraph, b2: ColoredGraph) -> bool:
        if _invariant(b1) != _invariant(b2):
            return False
        try:
            m1 = find_compact_clique_minor(b1.graph, COMPACT_CLIQUE, budget)
            m2 = find_compact_clique_minor(b2.graph, COMPACT_CLIQUE, budget)
        except BudgetExhausted:
            m1 = m2 = None
        if m1 is not None and m2 is not None:
            stats.hit("k8")
            for b in (b1, b2):
                if has_induced_subgraph(b.graph, pattern):
                    raise ClassAssumptionViolated("block with a K8 minor contains an induced K2 + K1")
            return cograph_certificate(b1) == cograph_certificate(b2)
        if (m1 is None) != (m2 is None):
            stats.hit("k8-mismatch")
            return False
        stats.fallback = True
        stats.hit("fallback")
        return general_iso(b1, b2)

    return tester


def cop32k1_free_iso(g1, g2, budget: Optional[Budget] = None) -> IsoResult:
    """Isomorphism for co-(P3 + 2K1)-induced-minor-free graphs.

    Per block: a compact K8 minor (found in both blocks) forces
    (K2 + K1)-free blocks, decided by cograph certificates; a K8 in only
    one of them means non-isomorphic; without one the general search
    decides and the result is flagged ``fallback``.
    """
    budget = ensure(budget)
    stats = _Stats()
    same = iso_via_blocks(g1, g2, _cop_block_tester(stats, budget))
    return IsoResult(same, "cop32k1", stats.fallback, stats.enumerated, branches=stats.branches)


def compact_k8_branch(g: Graph, budget: Optional[Budget] = None):
    """The compact K8 model a block would use, or None (exposed for tests)."""
    return find_compact_clique_minor(g, COMPACT_CLIQUE, budget)


# ---------------------------------------------------------------- dispatch

ALGORITHMS = ("auto", "gem", "cop32k1", "cograph", "general", "oracle")


def isomorphic(g1, g2, algo: str = "auto", budget: Optional[Budget] = None) -> IsoResult:
    from .oracles import iso_bruteforce

    if algo == "auto":
        c1, c2 = _p4_free_cert(as_colored(g1)), _p4_free_cert(as_colored(g2))
        algo = "cograph" if c1 is not None and c2 is not None else "general"
    if algo == "gem":
        return gem_free_iso(g1, g2, budget)
    if algo == "cop32k1":
        return cop32k1_free_iso(g1, g2, budget)
    if algo == "cograph":
        return IsoResult(cograph_certificate(g1) == cograph_certificate(g2), "cograph")
    if algo == "general":
        w = find_isomorphism_general(g1, g2, budget)
        return IsoResult(w is not None, "general", witness=w)
    if algo == "oracle":
        w = iso_bruteforce(g1, g2, budget)
        return IsoResult(w is not None, "oracle", witness=w)
    raise ValueError(f"unknown algorithm {algo!r}")
