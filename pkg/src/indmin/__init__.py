"""Induced-minor-free graph classes: membership tests, hardness reductions,
isomorphism algorithms and clique-width expressions, with brute-force
oracles to check them against."""

from .graph import ColoredGraph, Graph, from_graph6, to_graph6

__version__ = "0.1.0"
