"""Polynomial membership tests and structural witnesses.

* the forest characterization of (K3 + K1)-induced-minor-free graphs,
* compact clique minors (every bag a vertex or an edge),
* exclusive attachment and the suture witnesses of gem-free 2-connected graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .budget import Budget, ensure
from .cotree import try_cotree
from .graph import Graph, _bits, bits, component_masks, find_cycle, is_2connected, to_mask
from .named import complete
from .oracles import MinorModel, minor_bruteforce

# Soft caps on the candidate enumeration for suture witnesses.
MAX_BRANCH = 4
MAX_CANDIDATES = 200_000


# ------------------------------------------------------------------ K3 + K1


def find_k3uk1_violation(g: Graph) -> Optional[Tuple[int, List[int]]]:
    """A vertex ``u`` and a cycle in ``G - N[u]``, or None if every such
    graph is a forest."""
    full = (1 << g.n) - 1
    for u in range(g.n):
        cyc = find_cycle(g, full & ~g.masks[u] & ~(1 << u))
        if cyc is not None:
            return u, cyc
    return None


def k3uk1_induced_minor_free(g: Graph) -> bool:
    return find_k3uk1_violation(g) is None


# ------------------------------------------------------------ compact minors


def find_compact_clique_minor(g: Graph, t: int, budget: Optional[Budget] = None) -> Optional[MinorModel]:
    """A ``K_t`` minor model whose bags are single vertices or edges.

    Exhaustive over compact models, so None means no compact model exists.
    Raises ``BudgetExhausted`` when the search runs out of budget.
    """
    if t < 3:
        raise ValueError("t must be at least 3")
    budget = ensure(budget)
    masks = g.masks
    if g.n < t:
        return None
    cands = []
    for v in range(g.n):
        cands.append((1 << v, masks[v], g.degree(v)))
    for u, v in g.edges():
        bag = (1 << u) | (1 << v)
        cands.append((bag, (masks[u] | masks[v]) & ~bag, g.degree(u) + g.degree(v)))
    # a bag must see t-1 other disjoint bags
    cands = [c for c in cands if bin(c[1]).count("1") >= t - 1]
    cands.sort(key=lambda c: (-c[2], bin(c[0]).count("1"), c[0]))
    chosen: List[int] = []

    def search(pool, used):
        if len(chosen) == t:
            return True
        need = t - len(chosen)
        for idx in range(len(pool)):
            if len(pool) - idx < need:
                return False
            bag, nb, _ = pool[idx]
            budget.spend()
            rest = [c for c in pool[idx + 1:] if not (c[0] & (used | bag)) and (c[1] & bag)]
            if len(rest) < need - 1:
                continue
            chosen.append(bag)
            if search(rest, used | bag):
                return True
            chosen.pop()
        return False

    if search(cands, 0):
        return MinorModel(tuple(frozenset(_bits(b)) for b in chosen), induced=False)
    return None


def complete_induced_minor(g: Graph, k: int, budget: Optional[Budget] = None) -> bool:
    """Whether ``K_k`` is an induced minor (equivalently, a minor) of ``g``."""
    if k > 8:
        raise ValueError("k > 8 is outside the supported range")
    if k <= 0:
        return True
    if k == 1:
        return g.n >= 1
    if k == 2:
        return g.m >= 1
    if k == 3:
        return find_cycle(g) is not None
    budget = ensure(budget)
    if find_compact_clique_minor(g, k, budget) is not None:
        return True
    return minor_bruteforce(g, complete(k), budget) is not None


# ------------------------------------------------------- exclusive attachment


def _exclusive_mask(masks: Sequence[int], anchor: int, among: int) -> int:
    once = multi = 0
    for v in _bits(among):
        nv = masks[v] & anchor
        multi |= once & nv
        once |= nv
    out = 0
    for v in _bits(among):
        nv = masks[v] & anchor
        if nv and not (nv & multi):
            out |= 1 << v
    return out


def exclusive_attachment_set(g: Graph, c: Iterable[int], m: Iterable[int]) -> FrozenSet[int]:
    """Vertices of ``m`` that have a neighbor in ``c`` and share none of their
    ``c``-neighbors with another vertex of ``m``."""
    cm, mm = to_mask(c), to_mask(m)
    if cm & mm:
        raise ValueError("c and m must be disjoint")
    return frozenset(_bits(_exclusive_mask(g.masks, cm, mm)))


def attachment_chains(g: Graph, anchor: int, comp: int) -> Tuple[List[int], int]:
    """Iterate exclusive attachment to a fixpoint.

    Returns the chain masks ``A_1 .. A_t`` (each computed against the anchor
    grown by the previous chains) and the leftover residual mask.
    """
    chains = []
    rest = comp
    while rest:
        a = _exclusive_mask(g.masks, anchor, rest)
        if not a:
            break
        chains.append(a)
        anchor |= a
        rest &= ~a
    return chains, rest


# ------------------------------------------------------------------- sutures


@dataclass(frozen=True)
class ComponentWitness:
    vertices: FrozenSet[int]
    chains: Tuple[FrozenSet[int], ...]
    residual: FrozenSet[int]
    attachments: FrozenSet[int]

    def to_json(self):
        return {
            "vertices": sorted(self.vertices),
            "chains": [sorted(a) for a in self.chains],
            "residual": sorted(self.residual),
            "attachments": sorted(self.attachments),
        }


@dataclass(frozen=True)
class SutureWitness:
    """An induced path or cycle ``H`` plus, for every component of ``G - H``,
    its exclusive-attachment chains and the P4-free residual left over.

    An empty ``h_vertices`` means the whole graph is P4-free.
    """

    h_vertices: Tuple[int, ...]
    is_cycle: bool
    branch_vertices: FrozenSet[int]
    components: Tuple[ComponentWitness, ...]

    @property
    def special_vertices(self) -> FrozenSet[int]:
        """Branch vertices plus, for a path, its two ends."""
        out = set(self.branch_vertices)
        if self.h_vertices and not self.is_cycle:
            out.update((self.h_vertices[0], self.h_vertices[-1]))
        return frozenset(out)

    def to_json(self):
        return {
            "h": list(self.h_vertices),
            "cycle": self.is_cycle,
            "branch": sorted(self.branch_vertices),
            "components": [c.to_json() for c in self.components],
        }


def _is_p4_free_mask(g: Graph, mask: int) -> bool:
    return not mask or try_cotree(g, mask) is not None


def witness_for(g: Graph, order: Sequence[int], is_cycle: bool) -> Optional[SutureWitness]:
    """Build the witness for a given induced path/cycle, or None if some
    component fails (too many branch vertices, a cycle component seeing all
    of ``H``, a residual with a P4, or more than four attachments)."""
    hm = to_mask(order)
    branch = frozenset(v for v in order if g.degree(v) >= 3)
    if len(branch) > MAX_BRANCH:
        return None
    full = (1 << g.n) - 1
    comps = []
    for comp in component_masks(g, full & ~hm):
        nb = 0
        for v in _bits(comp):
            nb |= g.masks[v]
        if is_cycle and nb & hm == hm:
            return None
        chains, residual = attachment_chains(g, hm, comp)
        if not _is_p4_free_mask(g, residual):
            return None
        labeled = hm
        for a in chains:
            labeled |= a
        rnb = 0
        for v in _bits(residual):
            rnb |= g.masks[v]
        attach = rnb & labeled
        if bin(attach).count("1") > 4:
            return None
        comps.append(
            ComponentWitness(
                frozenset(_bits(comp)),
                tuple(frozenset(_bits(a)) for a in chains),
                frozenset(_bits(residual)),
                frozenset(_bits(attach)),
            )
        )
    comps.sort(key=lambda c: min(c.vertices))
    return SutureWitness(tuple(order), is_cycle, branch, tuple(comps))


def induced_paths_and_cycles(g: Graph, max_branch: int = MAX_BRANCH, budget: Optional[Budget] = None) -> Iterator[Tuple[Tuple[int, ...], bool]]:
    """Every induced path and induced cycle with at most ``max_branch``
    vertices of degree >= 3, each once, as ``(vertex order, is_cycle)``.

    Paths are reported with ``first <= last``; cycles start at their least
    vertex and continue towards the smaller neighbor.
    """
    budget = ensure(budget)
    masks = g.masks
    branching = [g.degree(v) >= 3 for v in range(g.n)]
    for s in range(g.n):
        if branching[s] and max_branch == 0:
            continue
        yield (s,), False
        stack = [([s], 1 << s, int(branching[s]))]
        while stack:
            path, pmask, nbr = stack.pop()
            last = path[-1]
            for w in _bits(masks[last] & ~pmask):
                budget.spend()
                nb = nbr + branching[w]
                if nb > max_branch:
                    continue
                # adjacency of w to path vertices other than the last
                touch = masks[w] & pmask & ~(1 << last)
                if touch == 0:
                    new = path + [w]
                    if new[0] < new[-1]:
                        yield tuple(new), False
                    stack.append((new, pmask | (1 << w), nb))
                elif touch == (1 << path[0]) and len(path) >= 2:
                    cyc = path + [w]
                    if cyc[0] == min(cyc) and cyc[1] < cyc[-1]:
                        yield tuple(cyc), True


def _candidate_key(item):
    order, is_cycle = item
    return (0 if is_cycle else 1, sorted(order), order)


def suture_candidates(g: Graph, budget: Optional[Budget] = None) -> List[Tuple[Tuple[int, ...], bool]]:
    """All candidate H: cycles before paths, then least sorted vertex list."""
    budget = ensure(budget)
    found = []
    for item in induced_paths_and_cycles(g, MAX_BRANCH, budget):
        found.append(item)
        if len(found) > MAX_CANDIDATES:
            raise RuntimeError("suture candidate enumeration exceeded its cap")
    found.sort(key=_candidate_key)
    return found


def iter_suture_witnesses(g: Graph, budget: Optional[Budget] = None, is_cycle: Optional[bool] = None, length: Optional[int] = None) -> Iterator[SutureWitness]:
    """Every valid witness with a non-empty H, in preference order,
    optionally restricted to one kind and length of H."""
    for order, cyc in suture_candidates(g, budget):
        if is_cycle is not None and cyc != is_cycle:
            continue
        if length is not None and len(order) != length:
            continue
        w = witness_for(g, order, cyc)
        if w is not None:
            yield w


def find_suture_structure(g: Graph, budget: Optional[Budget] = None) -> Optional[SutureWitness]:
    """Suture witness of a 2-connected graph.

    P4-free input gives the witness with empty H.  Otherwise the preferred
    valid witness (cycles before paths, then least sorted vertex list) is
    returned, or None if there is none, which on a 2-connected
    gem-induced-minor-free graph does not happen.
    """
    if not is_2connected(g):
        raise ValueError("find_suture_structure needs a 2-connected graph")
    full = (1 << g.n) - 1
    if _is_p4_free_mask(g, full):
        whole = ComponentWitness(frozenset(range(g.n)), (), frozenset(range(g.n)), frozenset())
        return SutureWitness((), False, frozenset(), (whole,))
    return next(iter_suture_witnesses(g, budget), None)


def suture_violations(g: Graph, w: SutureWitness) -> List[str]:
    """Independent check of every witness invariant; empty when valid."""
    from .oracles import find_induced_p4
    from .graph import induced_subgraph

    def p4_in(vs):
        return find_induced_p4(induced_subgraph(g, vs)) is not None

    problems = []
    h = list(w.h_vertices)
    hs = set(h)
    if not h:
        if p4_in(range(g.n)):
            problems.append("empty H but the graph has an induced P4")
        return problems
    if len(hs) != len(h):
        return ["H repeats a vertex"]
    k = len(h)
    want = {frozenset((h[i], h[i + 1])) for i in range(k - 1)}
    if w.is_cycle:
        if k < 3:
            return ["cycle H needs at least 3 vertices"]
        want.add(frozenset((h[-1], h[0])))
    have = {frozenset((u, v)) for u in h for v in g.adj[u] if v in hs}
    if have != want:
        problems.append("H is not an induced path/cycle in the given order")
    branch = {v for v in h if g.degree(v) >= 3}
    if branch != set(w.branch_vertices):
        problems.append("branch vertices do not match degrees")
    if len(branch) > 4:
        problems.append("more than 4 branch vertices")
    rest = [v for v in range(g.n) if v not in hs]
    expect_comps = {frozenset(c) for c in (bits(m) for m in component_masks(g, to_mask(rest)))} if rest else set()
    if {c.vertices for c in w.components} != expect_comps:
        problems.append("components do not match G - H")
        return problems
    for idx, comp in enumerate(w.components):
        m = set(comp.vertices)
        touch = {x for v in m for x in g.adj[v] if x in hs}
        if w.is_cycle and touch == hs:
            problems.append(f"component {idx} sees all of the cycle")
        anchor = set(hs)
        remaining = set(m)
        for lvl, a in enumerate(comp.chains):
            for v in a:
                nv = g.adj[v] & anchor
                if v not in remaining or not nv:
                    problems.append(f"component {idx} level {lvl}: {v} has no anchor neighbor")
                    continue
                if any(g.adj[x] & nv for x in remaining if x != v):
                    problems.append(f"component {idx} level {lvl}: {v} is not exclusive")
            anchor |= set(a)
            remaining -= set(a)
        if remaining != set(comp.residual):
            problems.append(f"component {idx}: residual is not M minus the chains")
        for v in remaining:
            nv = g.adj[v] & anchor
            if nv and not any(g.adj[x] & nv for x in remaining if x != v):
                problems.append(f"component {idx}: chains stop before the fixpoint ({v})")
                break
        if remaining and p4_in(remaining):
            problems.append(f"component {idx}: residual has an induced P4")
        att = {x for v in remaining for x in g.adj[v] if x in anchor}
        if att != set(comp.attachments):
            problems.append(f"component {idx}: attachments mismatch")
        if len(att) > 4:
            problems.append(f"component {idx}: more than 4 attachments")
    return problems
