"""Clique-width k-expressions: build, evaluate, verify, serialize.

Vertex ids in an expression are the ids of the graph it describes; for
expressions of an induced subgraph the original ids are kept, so composing
pieces never needs renumbering.

Width bound for gem-induced-minor-free graphs
---------------------------------------------
``gem_free_expression`` builds every 2-connected block from a suture
witness (H, components):

* the pieces left after removing the attachment vertices inside a
  component M are cographs (2 labels), induced paths (3) or induced
  cycles (4), so k0 = 4;
* adding back the at most 4 attachments of M: 2^4 * (4 + 1) - 1 = 79;
* H minus its branch vertices and path ends falls apart into induced paths
  and the components M, so the union of all of them needs at most 79 labels;
* adding back the at most 6 special vertices of H: 2^6 * (79 + 1) - 1 = 5119;
* gluing blocks costs 2 more labels: ``W_GEM = 5121``.

Actual widths are far below this because only adjacency profiles that
occur get their own label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .cotree import JOIN, LEAF, cotree, try_cotree
from .graph import Graph, _bits, blocks, component_masks, induced_subgraph, to_mask
from .structure import iter_suture_witnesses

APEX_MAX = 6
PIECE_WIDTH = 4
ATTACH_MAX = 4
SPECIAL_MAX = 6


def apex_bound(s: int, k: int) -> int:
    return 2 ** s * (k + 1) - 1


W_GEM = apex_bound(SPECIAL_MAX, apex_bound(ATTACH_MAX, PIECE_WIDTH)) + 2


class ExpressionError(ValueError):
    """Malformed expression (duplicate vertex, join of a label with itself, bad text)."""


class StructureNotFound(RuntimeError):
    """No usable suture decomposition; the input is probably not gem-free."""


@dataclass(frozen=True, eq=False)
class Create:
    vertex: int
    label: int


@dataclass(frozen=True, eq=False)
class Union:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, eq=False)
class Join:
    child: "Expr"
    i: int
    j: int


@dataclass(frozen=True, eq=False)
class Rename:
    child: "Expr"
    i: int
    j: int


Expr = object  # one of Create, Union, Join, Rename


def _postorder(e):
    stack = [(e, False)]
    while stack:
        node, seen = stack.pop()
        if isinstance(node, Create) or seen:
            yield node
            continue
        stack.append((node, True))
        if isinstance(node, Union):
            stack.append((node.right, False))
            stack.append((node.left, False))
        elif isinstance(node, (Join, Rename)):
            stack.append((node.child, False))
        else:
            raise ExpressionError(f"not an expression node: {node!r}")


def fold(e, leaf: Callable, union: Callable, join: Callable, rename: Callable):
    """Bottom-up evaluation without recursion."""
    vals: List = []
    for node in _postorder(e):
        if isinstance(node, Create):
            vals.append(leaf(node))
        elif isinstance(node, Union):
            right = vals.pop()
            vals.append(union(node, vals.pop(), right))
        elif isinstance(node, Join):
            vals.append(join(node, vals.pop()))
        else:
            vals.append(rename(node, vals.pop()))
    return vals[0]


@dataclass
class LabeledGraph:
    vertices: FrozenSet[int]
    edges: FrozenSet[Tuple[int, int]]
    labels: Dict[int, int]

    def to_graph(self) -> Graph:
        if self.vertices != frozenset(range(len(self.vertices))):
            raise ValueError("vertex ids are not 0..n-1")
        return Graph(len(self.vertices), self.edges)


def evaluate(e) -> LabeledGraph:
    """Build the labeled graph an expression describes."""
    edges: Set[Tuple[int, int]] = set()
    seen: Set[int] = set()

    def leaf(node):
        if node.vertex in seen:
            raise ExpressionError(f"vertex {node.vertex} created twice")
        seen.add(node.vertex)
        return {node.label: [node.vertex]}

    def union(node, a, b):
        if len(a) < len(b):
            a, b = b, a
        for lab, vs in b.items():
            a.setdefault(lab, []).extend(vs)
        return a

    def join(node, cls):
        if node.i == node.j:
            raise ExpressionError("join needs two different labels")
        for u in cls.get(node.i, ()):
            for v in cls.get(node.j, ()):
                edges.add((u, v) if u < v else (v, u))
        return cls

    def rename(node, cls):
        if node.i != node.j and node.i in cls:
            cls.setdefault(node.j, []).extend(cls.pop(node.i))
        return cls

    classes = fold(e, leaf, union, join, rename)
    labels = {v: lab for lab, vs in classes.items() for v in vs}
    return LabeledGraph(frozenset(seen), frozenset(edges), labels)


def _induced_edges(g: Graph, on: Iterable[int]) -> Set[Tuple[int, int]]:
    vs = to_mask(on)
    return {(u, v) for u in _bits(vs) for v in _bits(g.masks[u] & vs) if u < v}


def verify(e, g: Graph, on: Optional[Iterable[int]] = None) -> bool:
    """Does ``e`` build exactly ``g`` (or ``g[on]``, original ids)?"""
    vertices = frozenset(range(g.n)) if on is None else frozenset(on)
    try:
        lg = evaluate(e)
    except ExpressionError:
        return False
    return lg.vertices == vertices and lg.edges == _induced_edges(g, vertices)


def labels_of(e) -> Set[int]:
    out: Set[int] = set()
    for node in _postorder(e):
        if isinstance(node, Create):
            out.add(node.label)
        elif isinstance(node, (Join, Rename)):
            out.update((node.i, node.j))
    return out


def width(e) -> int:
    """Number of distinct labels appearing anywhere in ``e``."""
    return len(labels_of(e))


def final_labels(e) -> Set[int]:
    return set(evaluate(e).labels.values())


def size(e) -> int:
    return sum(1 for _ in _postorder(e))


# ------------------------------------------------------------------- text

_TOKEN = re.compile(r"\s*(?:([cujr])\(|(-?\d+)|(,)|(\)))")


def to_text(e) -> str:
    return fold(
        e,
        lambda n: f"c({n.vertex},{n.label})",
        lambda n, a, b: f"u({a},{b})",
        lambda n, a: f"j({a},{n.i},{n.j})",
        lambda n, a: f"r({a},{n.i},{n.j})",
    )


def parse(text: str):
    """Inverse of :func:`to_text`."""
    arity = {"c": (0, 2), "u": (2, 0), "j": (1, 2), "r": (1, 2)}
    frames: List[Tuple[str, list]] = []
    result = None
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected text at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        op, num, comma, close = m.groups()
        if op:
            frames.append((op, []))
        elif num is not None:
            if not frames:
                raise ExpressionError("number outside an operation")
            frames[-1][1].append(int(num))
        elif comma:
            continue
        else:
            if not frames:
                raise ExpressionError("unbalanced ')'")
            op, args = frames.pop()
            subs = [a for a in args if not isinstance(a, int)]
            nums = [a for a in args if isinstance(a, int)]
            if (len(subs), len(nums)) != arity[op]:
                raise ExpressionError(f"wrong arguments for {op}(...)")
            node = {
                "c": lambda: Create(*nums),
                "u": lambda: Union(*subs),
                "j": lambda: Join(subs[0], *nums),
                "r": lambda: Rename(subs[0], *nums),
            }[op]()
            if frames:
                frames[-1][1].append(node)
            elif result is None:
                result = node
            else:
                raise ExpressionError("trailing expression")
    if frames or result is None:
        raise ExpressionError("incomplete expression")
    return result


# --------------------------------------------------------------- rewriting


def relabel_labels(e, mapping: Dict[int, int]):
    f = lambda x: mapping.get(x, x)
    return fold(
        e,
        lambda n: Create(n.vertex, f(n.label)),
        lambda n, a, b: Union(a, b),
        lambda n, a: Join(a, f(n.i), f(n.j)),
        lambda n, a: Rename(a, f(n.i), f(n.j)),
    )


def relabel_vertices(e, mapping: Dict[int, int]):
    return fold(
        e,
        lambda n: Create(mapping[n.vertex], n.label),
        lambda n, a, b: Union(a, b),
        lambda n, a: Join(a, n.i, n.j),
        lambda n, a: Rename(a, n.i, n.j),
    )


def normalize_labels(e):
    """Rename labels to 1..width in order of first appearance."""
    order: Dict[int, int] = {}
    for node in _postorder(e):
        labs = (node.label,) if isinstance(node, Create) else (node.i, node.j) if not isinstance(node, Union) else ()
        for lab in labs:
            order.setdefault(lab, len(order) + 1)
    return relabel_labels(e, order)


def collapse(e, target: int):
    """Rename every final label to ``target``."""
    for lab in sorted(final_labels(e)):
        if lab != target:
            e = Rename(e, lab, target)
    return e


def union_all(parts: Sequence):
    acc = None
    for p in parts:
        acc = p if acc is None else Union(acc, p)
    return acc


# ------------------------------------------------------------- base pieces


def cograph_expression(g: Graph, on: Optional[Iterable[int]] = None):
    """Width <= 2 expression of a P4-free graph; every vertex ends with label 1."""
    mask = (1 << g.n) - 1 if on is None else to_mask(on)
    if not mask:
        raise ValueError("empty graph has no expression")
    t = cotree(g, mask)

    def build(node, lab):
        if node.kind == LEAF:
            return Create(node.vertex, lab)
        kids = list(node.children)
        if node.kind != JOIN:
            return union_all([build(c, lab) for c in kids])
        acc = build(kids[0], 1)
        for c in kids[1:]:
            acc = Rename(Join(Union(acc, build(c, 2)), 1, 2), 2, 1)
        return acc if lab == 1 else Rename(acc, 1, lab)

    return build(t, 1)


def path_expression(order: Sequence[int]):
    """Sliding three-label expression of the path ``order[0] - order[1] - ...``."""
    dead, live, new = 1, 2, 3
    if len(order) == 1:
        return Create(order[0], dead)
    acc = Create(order[0], live)
    for v in order[1:]:
        acc = Rename(Rename(Join(Union(acc, Create(v, new)), live, new), live, dead), new, live)
    return Rename(acc, live, dead)


def cycle_expression(order: Sequence[int]):
    """Four labels: the first vertex keeps its own label until the cycle closes."""
    if len(order) < 3:
        raise ValueError("a cycle needs three vertices")
    dead, live, new, anchor = 1, 2, 3, 4
    acc = Join(Union(Create(order[0], anchor), Create(order[1], live)), anchor, live)
    for v in order[2:]:
        acc = Rename(Rename(Join(Union(acc, Create(v, new)), live, new), live, dead), new, live)
    acc = Join(acc, live, anchor)
    return Rename(Rename(acc, live, dead), anchor, dead)


def _walk_order(g: Graph, mask: int) -> List[int]:
    """Vertices of an induced path or cycle in traversal order."""
    vs = list(_bits(mask))
    deg = {v: bin(g.masks[v] & mask).count("1") for v in vs}
    start = min((v for v in vs if deg[v] == 1), default=vs[0])
    order, prev, cur = [start], -1, start
    while True:
        nxt = [w for w in _bits(g.masks[cur] & mask) if w != prev and w != start]
        if not nxt or len(order) == len(vs):
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def piece_expression(g: Graph, mask: int):
    """Expression of a connected piece that is a cograph, path or cycle.

    All vertices end with label 1; width at most ``PIECE_WIDTH``.
    """
    if try_cotree(g, mask) is not None:
        return cograph_expression(g, _bits(mask))
    k = bin(mask).count("1")
    degs = [bin(g.masks[v] & mask).count("1") for v in _bits(mask)]
    edges = sum(degs) // 2
    if max(degs) <= 2 and edges == k - 1:
        return path_expression(_walk_order(g, mask))
    if max(degs) <= 2 and edges == k:
        return cycle_expression(_walk_order(g, mask))
    raise StructureNotFound("piece is neither a cograph, a path nor a cycle")


# ------------------------------------------------------------ composition


def compose_apex(e, g: Graph, s: Iterable[int], on: Optional[Iterable[int]] = None):
    """Extend an expression of ``g[on] - s`` to one of ``g[on]``.

    Every label ``l`` of ``e`` is split by the adjacency profile towards
    ``s``; only (label, profile) pairs that actually occur get a label.
    The result uses at most ``2^|s| * (width(e) + 1) - 1`` labels.
    ``e`` may be None when ``g[on] - s`` is empty.
    """
    s = sorted(set(s))
    universe = set(range(g.n)) if on is None else set(on)
    if not set(s) <= universe:
        raise ValueError("apex set must lie inside the graph")
    if len(s) > APEX_MAX:
        raise ValueError(f"at most {APEX_MAX} apex vertices supported")
    rest = sorted(universe - set(s))
    if e is None:
        if rest:
            raise ValueError("missing expression for the non-apex part")
        k = 0
    else:
        if not verify(e, g, rest):
            raise ValueError("expression does not build g - s")
        k = width(e)
    if not s:
        return e
    smask = {x: i for i, x in enumerate(s)}

    def profile(v):
        return sum(1 << smask[x] for x in _bits(g.masks[v]) if x in smask)

    ids: Dict[Tuple[int, int], int] = {}

    def lab(a, p):
        if (a, p) not in ids:
            ids[(a, p)] = len(ids) + 1
        return ids[(a, p)]

    def leaf(n):
        p = profile(n.vertex)
        return Create(n.vertex, lab(n.label, p)), {(n.label, p)}

    def union(n, a, b):
        return Union(a[0], b[0]), a[1] | b[1]

    def join(n, a):
        expr, present = a
        left = sorted(p for x, p in present if x == n.i)
        right = sorted(p for x, p in present if x == n.j)
        for p in left:
            for q in right:
                expr = Join(expr, lab(n.i, p), lab(n.j, q))
        return expr, present

    def rename(n, a):
        expr, present = a
        if n.i == n.j:
            return a
        moved = set()
        for x, p in sorted(present):
            if x == n.i:
                expr = Rename(expr, lab(n.i, p), lab(n.j, p))
                moved.add((n.j, p))
            else:
                moved.add((x, p))
        return expr, moved

    acc = None
    per_profile: Dict[int, int] = {}
    if e is not None:
        acc, present = fold(e, leaf, union, join, rename)
        for x, p in sorted(present):
            target = per_profile.setdefault(p, ids[(x, p)])
            if ids[(x, p)] != target:
                acc = Rename(acc, ids[(x, p)], target)
    fresh = max(ids.values(), default=0) + 1
    apex_label = {x: fresh + i for i, x in enumerate(s)}
    for i, x in enumerate(s):
        leaf_x = Create(x, apex_label[x])
        acc = leaf_x if acc is None else Union(acc, leaf_x)
        for p, target in sorted(per_profile.items()):
            if p >> i & 1:
                acc = Join(acc, target, apex_label[x])
        for y in s[:i]:
            if g.has_edge(x, y):
                acc = Join(acc, apex_label[y], apex_label[x])
    bound = apex_bound(len(s), k)
    if width(acc) > bound:
        raise AssertionError(f"apex composition used {width(acc)} > {bound} labels")
    return acc


def compose_blocks(block_exprs: Dict[FrozenSet[int], object], g: Graph):
    """Glue block expressions along the block-cut tree.

    Two extra labels: P marks the cut vertex a subtree hangs from, D marks
    finished vertices that take no further edges.  A child cut vertex is
    created by the expression of everything hanging below it (renamed from
    P to its label in the block), and sibling blocks at a cut vertex are
    nested through that vertex's leaf.  Width is at most max + 2.
    """
    bd = blocks(g)
    keys = {frozenset(b): i for i, b in enumerate(bd.blocks)}
    if set(block_exprs) != set(keys):
        raise ValueError("need exactly one expression per block")
    for b, e in block_exprs.items():
        if not verify(e, g, b):
            raise ValueError(f"expression for block {sorted(b)} does not verify")
    if len(bd.blocks) == 1:
        return next(iter(block_exprs.values()))
    norm = [None] * len(bd.blocks)
    for b, i in keys.items():
        norm[i] = normalize_labels(block_exprs[b])
    t = max(width(e) for e in norm)
    P, D = t + 1, t + 2
    cuts = set(bd.cut_vertices)

    nb = len(bd.blocks)
    cut_node = {v: nb + i for i, v in enumerate(sorted(cuts))}
    node_cut = {i: v for v, i in cut_node.items()}
    tree: Dict[int, List[int]] = {i: [] for i in range(nb + len(cuts))}
    for bi, v in bd.tree_edges:
        tree[bi].append(cut_node[v])
        tree[cut_node[v]].append(bi)

    def build(bi, parent, inner, chain):
        def leaf(n):
            v = n.vertex
            if v == parent:
                return inner, n.label
            if v in cuts:
                return Rename(chain[v], P, n.label), None
            return Create(v, n.label), None

        def union(n, a, b):
            return Union(a[0], b[0]), a[1] if a[1] is not None else b[1]

        def join(n, a):
            expr, pl = a
            expr = Join(expr, n.i, n.j)
            if pl == n.i:
                expr = Join(expr, P, n.j)
            elif pl == n.j:
                expr = Join(expr, n.i, P)
            return expr, pl

        def rename(n, a):
            expr, pl = a
            return Rename(expr, n.i, n.j), n.j if pl == n.i else pl

        expr, _ = fold(norm[bi], leaf, union, join, rename)
        for lab in sorted(labels_of(norm[bi])):
            expr = Rename(expr, lab, D)
        return expr

    done: Set[int] = set()
    parts = []
    for root in range(nb):
        if root in done:
            continue
        parent = {root: -1}
        order = [root]
        for x in order:
            for y in sorted(tree[x]):
                if y not in parent:
                    parent[y] = x
                    order.append(y)
        done.update(x for x in order if x < nb)
        chain: Dict[int, object] = {}
        for x in reversed(order):
            if x < nb:
                continue
            c = node_cut[x]
            inner = Create(c, P)
            for bi in sorted((y for y in tree[x] if parent.get(y) == x), reverse=True):
                inner = build(bi, c, inner, chain)
            chain[c] = inner
        parts.append(build(root, None, None, chain))
    out = union_all(parts)
    if width(out) > t + 2:
        raise AssertionError(f"block composition used {width(out)} > {t + 2} labels")
    return out


# -------------------------------------------------------------- gem-free


def _block_expression(g: Graph, verts: Sequence[int]):
    mask = to_mask(verts)
    if len(verts) == 1:
        return Create(verts[0], 1)
    if try_cotree(g, mask) is not None:
        return cograph_expression(g, verts)
    degs = [bin(g.masks[v] & mask).count("1") for v in verts]
    if max(degs) == 2:
        return cycle_expression(_walk_order(g, mask))
    bg = induced_subgraph(g, verts)
    back = dict(enumerate(verts))
    # witnesses are tried in preference order; a valid one can still have
    # chains that are not paths, which this construction does not cover
    last = "no suture witness for a block"
    try:
        for w in iter_suture_witnesses(bg):
            try:
                return relabel_vertices(witness_expression(bg, w), back)
            except StructureNotFound as exc:
                last = str(exc)
    except (ValueError, RuntimeError) as exc:
        raise StructureNotFound(str(exc)) from exc
    raise StructureNotFound(last)


def witness_expression(bg: Graph, w):
    """Expression of a 2-connected graph from one suture witness."""
    special = w.special_vertices
    full = (1 << bg.n) - 1
    hm = to_mask(w.h_vertices)
    comps = {to_mask(c.vertices): c for c in w.components}
    parts = []
    for piece in component_masks(bg, full & ~to_mask(special)):
        if piece & hm:
            if piece & ~hm:
                raise StructureNotFound("an H segment touches a component")
            parts.append(piece_expression(bg, piece))
            continue
        c = comps.get(piece)
        if c is None:
            raise StructureNotFound("component of G - H meets H outside its special vertices")
        inner = [a for a in c.attachments if a in c.vertices]
        if len(c.attachments) > ATTACH_MAX:
            raise StructureNotFound("component with more than four attachments")
        sub = [piece_expression(bg, q) for q in component_masks(bg, piece & ~to_mask(inner))]
        e = compose_apex(union_all(sub), bg, inner, on=c.vertices)
        parts.append(collapse(e, 1))
    return compose_apex(union_all(parts), bg, special)


def gem_free_expression(g: Graph):
    """Expression of a gem-induced-minor-free graph with width <= ``W_GEM``.

    Raises :class:`StructureNotFound` when a block has no usable suture
    decomposition, which means the input is outside the class.
    """
    if g.n == 0:
        raise ValueError("empty graph has no expression")
    if try_cotree(g) is not None:
        return cograph_expression(g)
    bd = blocks(g)
    exprs = {frozenset(b): _block_expression(g, sorted(b)) for b in bd.blocks}
    out = compose_blocks(exprs, g)
    if width(out) > W_GEM:
        raise AssertionError(f"width {width(out)} above W_GEM = {W_GEM}")
    return out


def build(g: Graph, method: str = "gemfree"):
    if method == "cograph":
        return cograph_expression(g)
    if method == "gemfree":
        return gem_free_expression(g)
    raise ValueError(f"unknown method {method!r}")

