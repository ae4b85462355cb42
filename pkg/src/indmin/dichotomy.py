"""Classifier for H-induced-minor-free classes.

GI on H-induced-minor-free graphs is polynomial iff H is complete or an
induced subgraph of the gem or of co-(P3 + 2K1); otherwise GI-complete.
Clique-width is bounded iff H is an induced subgraph of the gem or of
co-(P3 + 2K1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, List, Optional, Tuple

from .graph import Graph, _bits, complement, to_mask
from .named import co_p3_2k1, gem, k3_k1
from .oracles import find_induced_subgraph

POLY, GIC = "PolynomialTime", "GIComplete"
BOUNDED, UNBOUNDED = "Bounded", "Unbounded"
MAX_EXHAUSTIVE = 10


@dataclass(frozen=True)
class SplitPartition:
    clique: frozenset
    independent: frozenset

    def max_clique_neighbors(self, g: Graph) -> int:
        cm = to_mask(self.clique)
        return max((bin(g.masks[v] & cm).count("1") for v in self.independent), default=0)

    def to_json(self):
        return {"clique": sorted(self.clique), "independent": sorted(self.independent)}


def is_split_partition(g: Graph, clique, independent) -> bool:
    c, i = set(clique), set(independent)
    if c & i or c | i != set(range(g.n)):
        return False
    if any(not g.has_edge(u, v) for u, v in combinations(sorted(c), 2)):
        return False
    return not any(g.has_edge(u, v) for u, v in combinations(sorted(i), 2))


def enumerate_split_partitions(h: Graph) -> List[SplitPartition]:
    if h.n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive split scan capped at {MAX_EXHAUSTIVE} vertices")
    full = (1 << h.n) - 1
    out = []
    for cm in range(full + 1):
        im = full & ~cm
        if any((h.masks[v] & cm) | (1 << v) != cm | (1 << v) for v in _bits(cm)):
            continue
        if any(h.masks[v] & im for v in _bits(im)):
            continue
        out.append(SplitPartition(frozenset(_bits(cm)), frozenset(_bits(im))))
    return out


def restricted_split_partition(h: Graph) -> Optional[SplitPartition]:
    for p in enumerate_split_partitions(h):
        if p.max_clique_neighbors(h) <= 2:
            return p
    return None


def is_restricted_split_type(h: Graph) -> bool:
    return restricted_split_partition(h) is not None


def cobipartite_witness(h: Graph) -> Tuple[bool, Any]:
    """(True, (A, B)) with A, B cliques, or (False, odd cycle of the complement)."""
    co = complement(h)
    side = [-1] * h.n
    parent = [-1] * h.n
    for s in range(h.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        for u in queue:
            for w in sorted(co.adj[u]):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    return False, _odd_cycle(parent, u, w)
    a = [v for v in range(h.n) if side[v] == 0]
    b = [v for v in range(h.n) if side[v] == 1]
    return True, (a, b)


def _odd_cycle(parent, u, w):
    """Cycle through the tree paths of ``u`` and ``w`` plus the edge ``uw``."""
    up = [u]
    while parent[up[-1]] >= 0:
        up.append(parent[up[-1]])
    wp = [w]
    while parent[wp[-1]] >= 0:
        wp.append(parent[wp[-1]])
    common = set(up) & set(wp)
    up = up[: next(i for i, x in enumerate(up) if x in common) + 1]
    wp = wp[: next(i for i, x in enumerate(wp) if x in common)]
    return list(reversed(up)) + wp


def is_cobipartite(h: Graph) -> bool:
    return cobipartite_witness(h)[0]


def is_complete(h: Graph) -> bool:
    return h.m == h.n * (h.n - 1) // 2


@dataclass
class Rule:
    tag: str
    ref: str
    witness: Any = None

    def to_json(self):
        return {"tag": self.tag, "ref": self.ref, "witness": _jsonable(self.witness)}


def _jsonable(x):
    if isinstance(x, SplitPartition):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items())}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


@dataclass
class ClassVerdict:
    gi: str
    cw: str
    rules: List[Rule] = field(default_factory=list)

    @property
    def polynomial(self) -> bool:
        return self.gi == POLY

    @property
    def bounded(self) -> bool:
        return self.cw == BOUNDED

    def to_json(self):
        return {"gi": self.gi, "cw": self.cw, "rules": [r.to_json() for r in self.rules]}


def closed_form(h: Graph) -> Tuple[str, str]:
    """Verdict straight from the characterization, no audit trail."""
    small = find_induced_subgraph(gem(), h) is not None or find_induced_subgraph(co_p3_2k1(), h) is not None
    gi = POLY if small or is_complete(h) else GIC
    return gi, BOUNDED if small else UNBOUNDED


def classify(h: Graph) -> ClassVerdict:
    """GI and clique-width status of H-induced-minor-free graphs, with reasons.

    Hardness is justified by the first rule that applies, in the order:
    not restricted split, not co-bipartite, induced K3 + K1, and finally
    the case analysis for the remaining (six or more vertex) patterns.
    """
    if h.n == 0:
        raise ValueError("pattern must have at least one vertex")
    if h.n > MAX_EXHAUSTIVE:
        gi, cw = closed_form(h)
        return ClassVerdict(gi, cw, [Rule("closed form", "size above exhaustive cap; predicates skipped")])

    rules: List[Rule] = []
    in_gem = find_induced_subgraph(gem(), h)
    in_co = find_induced_subgraph(co_p3_2k1(), h)
    if in_gem is not None:
        rules.append(Rule("induced subgraph of gem", "gem-free: polynomial GI, bounded clique-width", in_gem))
    if in_co is not None:
        rules.append(Rule("induced subgraph of co-(P3+2K1)", "co-(P3+2K1)-free: polynomial GI, bounded clique-width", in_co))
    if in_gem is not None or in_co is not None:
        return ClassVerdict(POLY, BOUNDED, rules)

    if is_complete(h):
        # K_k minors for k >= 5 admit every clique-width
        rules.append(Rule("completeness", "K_k-induced-minor-free = K_k-minor-free: polynomial GI", h.n))
        rules.append(Rule("clique-width of K_k-free for k >= 5", "unbounded for k >= 5", h.n))
        return ClassVerdict(POLY, UNBOUNDED, rules)

    rules.append(_hardness_rule(h))
    return ClassVerdict(GIC, UNBOUNDED, rules)


def _hardness_rule(h: Graph) -> Rule:
    if not enumerate_split_partitions(h):
        return Rule("not restricted split", "no split partition; split graphs of restricted type are hard", None)
    if not is_restricted_split_type(h):
        worst = min(enumerate_split_partitions(h), key=lambda p: p.max_clique_neighbors(h))
        return Rule("not restricted split", "every split partition has an I-vertex with 3+ clique neighbors", worst)
    ok, wit = cobipartite_witness(h)
    if not ok:
        return Rule("not co-bipartite", "complement has an odd cycle; co-bipartite graphs are hard", wit)
    emb = find_induced_subgraph(h, k3_k1())
    if emb is not None:
        return Rule("contains K3+K1 as induced subgraph", "hence as induced minor; K3+K1-free graphs are hard", emb)
    return Rule("6+ vertex case analysis", "co-bipartite restricted split patterns outside gem and co-(P3+2K1)", h.n)
