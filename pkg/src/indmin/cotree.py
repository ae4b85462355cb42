"""Cotrees of P4-free graphs via complement-connectivity recursion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .graph import Graph, _bits, component_masks

LEAF, UNION, JOIN = "leaf", "union", "join"


class NotP4Free(ValueError):
    """The graph has an induced P4, so it has no cotree."""


@dataclass(frozen=True)
class CoTree:
    kind: str
    vertex: int = -1
    children: Tuple["CoTree", ...] = ()

    def leaves(self):
        if self.kind == LEAF:
            yield self.vertex
            return
        for c in self.children:
            yield from c.leaves()


def _co_components(g: Graph, mask: int):
    out = []
    rest = mask
    masks = g.masks
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nb = 0
            for w in _bits(frontier):
                nb |= (mask & ~masks[w] & ~(1 << w))
            frontier = nb & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def cotree(g: Graph, within: Optional[int] = None) -> CoTree:
    """Cotree of ``G[within]``; raises :class:`NotP4Free` if none exists."""
    mask = (1 << g.n) - 1 if within is None else within
    if not mask:
        raise ValueError("cotree of the empty graph is undefined")
    return _build(g, mask)


def _build(g, mask):
    if mask & (mask - 1) == 0:
        return CoTree(LEAF, mask.bit_length() - 1)
    parts = component_masks(g, mask)
    if len(parts) > 1:
        return CoTree(UNION, children=tuple(_build(g, p) for p in parts))
    parts = _co_components(g, mask)
    if len(parts) > 1:
        return CoTree(JOIN, children=tuple(_build(g, p) for p in parts))
    raise NotP4Free("graph contains an induced P4")


def try_cotree(g: Graph, within: Optional[int] = None) -> Optional[CoTree]:
    try:
        return cotree(g, within)
    except NotP4Free:
        return None


def evaluate(t: CoTree, n: int) -> Graph:
    """Rebuild the graph a cotree describes (on ``n`` vertices)."""
    edges = []

    def walk(node):
        if node.kind == LEAF:
            return [node.vertex]
        groups = [walk(c) for c in node.children]
        if node.kind == JOIN:
            for i in range(len(groups)):
                for j in range(i + 1, len(groups)):
                    edges.extend((a, b) for a in groups[i] for b in groups[j])
        return [v for grp in groups for v in grp]

    walk(t)
    return Graph(n, edges)
