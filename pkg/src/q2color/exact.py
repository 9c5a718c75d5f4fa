"""Exact optimum oracle for the maximum edge 2-coloring count.

exact_opt is a branch-and-bound over edges (join an existing color class or
open the next fresh one) with an admissible optimistic bound; naive_opt is
the independent cross-check that walks every constraint-feasible set
partition with no bounding at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (Graph, EdgeColoring, GraphError, canonical_edge,
                    components_after_removal, is_connected, require_min_degree,
                    validate_coloring)


class TooManyEdgesError(GraphError):
    """Instance too large for the exhaustive oracle."""


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class OptResult:
    opt_colors: int | None
    witness: EdgeColoring | None
    nodes_explored: int
    status: str  # "exact" | "unknown"

    def report(self) -> dict:
        return {"opt": self.opt_colors, "nodes_explored": self.nodes_explored,
                "status": self.status}


def naive_opt(g: Graph) -> int:
    """Exhaustively enumerate set partitions of the edge list in canonical
    order, skipping a branch as soon as some vertex would see a third color
    (the constraint is monotone, so no valid completion is lost), and return
    the largest class count reached."""
    if g.m > 12:
        raise TooManyEdgesError(f"naive oracle capped at 12 edges, got {g.m}")
    edges = g.edges
    m = len(edges)
    pal = [set() for _ in range(g.n)]
    best = 0

    def rec(i: int, k: int) -> None:
        nonlocal best
        if i == m:
            if k > best:
                best = k
            return
        u, v = edges[i]
        for c in range(k + 1):
            ok_u = c in pal[u] or len(pal[u]) < 2
            ok_v = c in pal[v] or len(pal[v]) < 2
            if ok_u and ok_v:
                add_u = c not in pal[u]
                add_v = c not in pal[v]
                if add_u:
                    pal[u].add(c)
                if add_v:
                    pal[v].add(c)
                rec(i + 1, k + 1 if c == k else k)
                if add_u:
                    pal[u].remove(c)
                if add_v:
                    pal[v].remove(c)

    rec(0, 0)
    return best


def upper_bound_path_packing(g: Graph) -> int:
    """Maximum edge count over spanning subgraphs that are disjoint unions of
    paths (max degree <= 2, acyclic). Valid optimum upper bound only for
    graphs of minimum degree >= 3, where every coloring has such a
    one-edge-per-color subgraph."""
    require_min_degree(g, 3)
    return _max_linear_forest(g)


def _max_linear_forest(g: Graph) -> int:
    edges = g.edges
    m = len(edges)
    cap = max(g.n - 1, 0)
    deg = [0] * g.n
    parent = list(range(g.n))  # union-find without path compression: O(1) undo
    best = 0

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if best >= cap or i == m or count + (m - i) <= best:
            return
        u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                deg[u] += 1
                deg[v] += 1
                rec(i + 1, count + 1)
                parent[ru] = ru
                deg[u] -= 1
                deg[v] -= 1
                if best >= cap:
                    return
        rec(i + 1, count)

    rec(0, 0)
    return best


def exact_opt(g: Graph, node_budget: int | None = None) -> OptResult:
    """Branch-and-bound search for the maximum number of color classes.

    Edges are assigned in order of decreasing endpoint degree; at each edge
    the branches are "open the lowest unused class" (tried first) and every
    palette-compatible existing class. A node is cut when

        classes so far + min(remaining edges, floor(palette slack / 2))

    capped by the path-packing bound (min degree >= 3 only) cannot beat the
    incumbent; the slack term is admissible because every newly opened class
    consumes a free palette slot at both endpoints of a yet-uncolored edge.
    The incumbent starts from a greedy matching-plus-components coloring,
    validated before use. On budget exhaustion the status is "unknown" and
    no count is returned.
    """
    if not is_connected(g):
        raise GraphError("exact search requires a connected graph")
    n, m = g.n, g.m
    if m == 0:
        return OptResult(0, EdgeColoring({}), 0, "exact")

    degs = g.degrees
    edges = sorted(g.edges, key=lambda e: (-max(degs[e[0]], degs[e[1]]), e))
    pp_cap = _max_linear_forest(g) if g.min_degree >= 3 else m

    seed_coloring, seed_k = _greedy_seed(g)
    best_k = seed_k
    best_assign = None

    pal = [[] for _ in range(n)]
    unprocessed = list(degs)
    assign = [-1] * m
    nodes = 0

    def optimistic(k: int, i: int) -> int:
        slack = 0
        for v in range(n):
            if unprocessed[v]:
                room = 2 - len(pal[v])
                if room > 0:
                    slack += room if room < unprocessed[v] else unprocessed[v]
        extra = slack // 2
        remaining = m - i
        if remaining < extra:
            extra = remaining
        ub = k + extra
        return ub if ub < pp_cap else pp_cap

    def rec(i: int, k: int) -> None:
        nonlocal best_k, best_assign, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise _BudgetExhausted
        if i == m:
            if k > best_k:
                best_k = k
                best_assign = assign[:]
            return
        if optimistic(k, i) <= best_k:
            return
        u, v = edges[i]
        pu, pv = pal[u], pal[v]
        if len(pu) == 2 and len(pv) == 2:
            cands = [c for c in pu if c in pv]
            fresh = False
        elif len(pu) == 2:
            cands = list(pu)
            fresh = False
        elif len(pv) == 2:
            cands = list(pv)
            fresh = False
        else:
            cands = list(range(k))
            fresh = True
        unprocessed[u] -= 1
        unprocessed[v] -= 1
        if fresh:
            pu.append(k)
            pv.append(k)
            assign[i] = k
            rec(i + 1, k + 1)
            pu.pop()
            pv.pop()
        for c in cands:
            add_u = c not in pu
            add_v = c not in pv
            if add_u:
                pu.append(c)
            if add_v:
                pv.append(c)
            assign[i] = c
            rec(i + 1, k)
            if add_u:
                pu.pop()
            if add_v:
                pv.pop()
        assign[i] = -1
        unprocessed[u] += 1
        unprocessed[v] += 1

    try:
        rec(0, 0)
    except _BudgetExhausted:
        return OptResult(None, None, nodes, "unknown")

    if best_assign is None:
        witness = seed_coloring.normalized()
    else:
        witness = EdgeColoring(
            {edges[i]: best_assign[i] + 1 for i in range(m)}).normalized()
    return OptResult(best_k, witness, nodes, "exact")


def _greedy_seed(g: Graph) -> tuple[EdgeColoring, int]:
    """Cheap valid coloring used as the initial incumbent: greedy matching in
    canonical edge order, distinct colors on it, one color per leftover
    component with edges."""
    mate = {}
    matched = []
    for u, v in g.edges:
        if u not in mate and v not in mate:
            mate[u] = v
            mate[v] = u
            matched.append((u, v))
    color_of = {}
    for i, e in enumerate(matched, start=1):
        color_of[e] = i
    comp_id = {}
    for idx, comp in enumerate(components_after_removal(g, matched)):
        for v in comp:
            comp_id[v] = idx
    colored = {}
    nxt = len(matched)
    matched_set = set(matched)
    for u, v in g.edges:
        if (u, v) in matched_set:
            continue
        cid = comp_id[u]
        if cid not in colored:
            nxt += 1
            colored[cid] = nxt
        color_of[(u, v)] = colored[cid]
    coloring = EdgeColoring(color_of)
    result = validate_coloring(g, coloring)
    if not result.ok:
        raise AssertionError("greedy seed produced an invalid coloring")
    return coloring, coloring.color_count
