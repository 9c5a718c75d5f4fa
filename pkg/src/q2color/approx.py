"""The matching-based coloring: distinct colors on a matching, then one
shared color for each leftover component that still contains an edge."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (Graph, EdgeColoring, GraphError, components_after_removal,
                    is_connected)
from .matching import Matching, MatchingError, maximum_matching


class DisconnectedError(GraphError):
    """Operation requires a connected graph."""


class NotMaximalError(GraphError):
    """Matching leaves some edge with both endpoints unmatched."""


@dataclass(frozen=True)
class AlgRun:
    """Outcome of one run: the matching used, how many leftover components
    received a color, the full coloring, and the color count."""

    matching_used: Matching
    component_count: int
    coloring: EdgeColoring
    alg_colors: int

    def report(self, g: Graph) -> dict:
        return {
            "n": g.n,
            "m": g.m,
            "matching_size": self.matching_used.size,
            "components": self.component_count,
            "alg_colors": self.alg_colors,
        }


def color_with_matching(g: Graph, m: Matching) -> AlgRun:
    """Color matching edges 1..k, then give each edge-containing component of
    the leftover graph one fresh color k+1, k+2, ...

    The matching must be maximal: every edge of the graph needs a matched
    endpoint so each vertex sees at most its matching color plus one
    component color. Edge-free leftover components get no color.
    """
    if not is_connected(g):
        raise DisconnectedError("input graph must be connected")
    for e in m.edges:
        if e not in g.edge_set:
            raise MatchingError(f"matching edge {e} not in graph")
    for u, v in g.edges:
        if not m.covers(u) and not m.covers(v):
            raise NotMaximalError(
                f"edge ({u}, {v}) has both endpoints unmatched; matching is not maximal")
    color_of = {}
    for i, e in enumerate(m.edges, start=1):
        color_of[e] = i
    matched = set(m.edges)
    leftover = [e for e in g.edges if e not in matched]
    comp_id = {}
    for idx, comp in enumerate(components_after_removal(g, m.edges)):
        for v in comp:
            comp_id[v] = idx
    colored = {}
    next_color = m.size
    for u, v in leftover:
        cid = comp_id[u]
        if cid not in colored:
            next_color += 1
            colored[cid] = next_color
        color_of[(u, v)] = colored[cid]
    return AlgRun(m, len(colored), EdgeColoring(color_of), m.size + len(colored))


def run_algorithm(g: Graph) -> AlgRun:
    """Full pipeline: deterministic maximum matching, then the coloring."""
    if g.n < 2:
        raise GraphError("need at least two vertices")
    if not is_connected(g):
        raise DisconnectedError("input graph must be connected")
    return color_with_matching(g, maximum_matching(g))
