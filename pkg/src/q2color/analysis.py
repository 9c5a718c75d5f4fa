"""Characteristic subgraphs, proof-counting diagnostics, and ratio verdicts.

A characteristic subgraph picks exactly one edge per color of a valid
coloring; with minimum degree >= 3 it can always be rewired into a disjoint
union of paths. The diagnostics recompute every counting quantity that the
approximation guarantees rest on, assert the identities that hold for any
path-union choice, and merely report the ones that depend on an extremal
choice no algorithm is given for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import (Graph, EdgeColoring, ColoringError, canonical_edge,
                    is_connected, is_triangle_free, require_min_degree,
                    validate_coloring)
from .matching import Matching, maximum_matching, is_perfect, verify_maximality
from .approx import run_algorithm
from .exact import exact_opt


class InvariantViolation(AssertionError):
    """A structural identity that must hold for every valid input failed;
    this indicates a bug, not a property of the instance."""


def _require_valid(g: Graph, coloring: EdgeColoring) -> None:
    result = validate_coloring(g, coloring)
    if not result.ok:
        raise ColoringError(
            f"vertex {result.vertex} sees colors {result.palette}")


class CharacteristicSubgraph:
    """One edge per color of a source coloring, arranged as disjoint paths.

    paths are vertex sequences, each oriented from its lower-numbered
    terminal; degree classes partition the host's vertices by their degree
    (0, 1 or 2) in the subgraph.
    """

    __slots__ = ("edges", "edge_set", "color_of", "paths", "n",
                 "degree_of", "n0_set", "n1_set", "n2_set")

    def __init__(self, g: Graph, coloring: EdgeColoring, edge_set):
        edges = tuple(sorted(edge_set))
        deg = [0] * g.n
        nbr = [[] for _ in range(g.n)]
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
            nbr[u].append(v)
            nbr[v].append(u)
        if any(d > 2 for d in deg):
            raise InvariantViolation("characteristic subgraph has degree > 2")
        colors = [coloring.color_of[e] for e in edges]
        if len(set(colors)) != len(edges) or len(edges) != coloring.color_count:
            raise InvariantViolation("not exactly one edge per color")
        self.edges = edges
        self.edge_set = frozenset(edges)
        self.color_of = {e: coloring.color_of[e] for e in edges}
        self.n = g.n
        self.degree_of = tuple(deg)
        self.n0_set = frozenset(v for v in range(g.n) if deg[v] == 0)
        self.n1_set = frozenset(v for v in range(g.n) if deg[v] == 1)
        self.n2_set = frozenset(v for v in range(g.n) if deg[v] == 2)
        self.paths = self._decompose(nbr)

    def _decompose(self, nbr) -> tuple:
        seen = set()
        paths = []
        for start in sorted(self.n1_set):
            if start in seen:
                continue
            walk = [start]
            seen.add(start)
            prev, cur = None, start
            while True:
                nxt = [w for w in nbr[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                walk.append(cur)
                seen.add(cur)
            paths.append(tuple(walk))
        covered = {v for p in paths for v in p}
        if covered != self.n1_set | self.n2_set:
            raise InvariantViolation("characteristic subgraph contains a cycle")
        return tuple(sorted(paths))

    @property
    def c(self) -> int:
        return len(self.edges)

    @property
    def n0(self) -> int:
        return len(self.n0_set)

    @property
    def n1(self) -> int:
        return len(self.n1_set)

    @property
    def n2(self) -> int:
        return len(self.n2_set)

    def path_of(self) -> dict:
        """Edge -> index of the path containing it."""
        out = {}
        for idx, p in enumerate(self.paths):
            for a, b in zip(p, p[1:]):
                out[canonical_edge(a, b)] = idx
        return out


def characteristic_subgraph(g: Graph, coloring: EdgeColoring) -> CharacteristicSubgraph:
    """Pick one edge per color and rewire until the result is a disjoint
    union of paths.

    Start from the lowest canonical edge of each class. While a cycle
    remains, take a cycle vertex u and a neighbor z outside the cycle
    (preferring one untouched by the subgraph, though any outside neighbor
    has subgraph-degree <= 1): the edge uz carries the color of one of u's
    two cycle edges, and swapping that cycle edge for uz opens the cycle
    while joining two paths end-to-end, so the cycle count strictly drops.
    Neighbors outside the cycle exist because the minimum degree is >= 3 and
    a chord of the cycle could not be colored at all.
    """
    require_min_degree(g, 3)
    _require_valid(g, coloring)
    chosen = {}
    for e in sorted(coloring.color_of):
        c = coloring.color_of[e]
        if c not in chosen:
            chosen[c] = e
    chi = set(chosen.values())
    while True:
        cycle = _find_cycle(g.n, chi)
        if cycle is None:
            break
        _break_cycle(g, coloring, chi, cycle)
    return CharacteristicSubgraph(g, coloring, chi)


def _find_cycle(n: int, chi: set):
    """Vertex set of the cycle with the smallest member, or None."""
    deg = [0] * n
    nbr = [[] for _ in range(n)]
    for u, v in chi:
        deg[u] += 1
        deg[v] += 1
        nbr[u].append(v)
        nbr[v].append(u)
    seen = set()
    for s in range(n):
        if s in seen or deg[s] == 0:
            continue
        comp = {s}
        stack = [s]
        edge_count = 0
        while stack:
            x = stack.pop()
            edge_count += len(nbr[x])
            for y in nbr[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        if edge_count // 2 == len(comp):  # as many edges as vertices: a cycle
            return comp
    return None


def _break_cycle(g: Graph, coloring: EdgeColoring, chi: set, cycle: set) -> None:
    deg = {}
    for u, v in chi:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    swap = None
    fallback = None
    for u in sorted(cycle):
        for z in g.adj[u]:
            if z in cycle:
                continue
            if deg.get(z, 0) == 0:
                swap = (u, z)
                break
            if fallback is None:
                fallback = (u, z)
        if swap:
            break
    if swap is None:
        swap = fallback
    if swap is None:
        raise InvariantViolation("cycle vertex without outside neighbor")
    u, z = swap
    a = coloring.color(u, z)
    for w in g.adj[u]:
        e = canonical_edge(u, w)
        if e in chi and coloring.color_of[e] == a:
            chi.remove(e)
            chi.add(canonical_edge(u, z))
            return
    raise InvariantViolation(
        "edge to outside neighbor does not share a color with a cycle edge")


def saturate_path_swaps(g: Graph, chi: CharacteristicSubgraph,
                        coloring: EdgeColoring) -> CharacteristicSubgraph:
    """Apply the two path-increasing rewires until neither applies.

    For a subgraph edge uv of color a lying on a path with at least two
    edges: either move color a onto an a-colored edge joining two untouched
    vertices, or, when u is internal and some untouched w closes an
    a-colored triangle over v, move it onto vw. Both rewires raise the path
    count by at least one, so at most c rounds run.
    """
    current = chi
    while True:
        move = _find_increasing_move(g, current, coloring)
        if move is None:
            return current
        drop, add = move
        new_edges = (current.edge_set - {drop}) | {add}
        nxt = CharacteristicSubgraph(g, coloring, new_edges)
        if len(nxt.paths) <= len(current.paths):
            raise InvariantViolation("rewire did not increase the path count")
        current = nxt


def _find_increasing_move(g: Graph, chi: CharacteristicSubgraph,
                          coloring: EdgeColoring):
    class_edges = coloring.classes()
    path_index = chi.path_of()
    path_len = {i: len(p) - 1 for i, p in enumerate(chi.paths)}
    deg = chi.degree_of
    adj_sets = [set(a) for a in g.adj]
    for e in chi.edges:
        if path_len[path_index[e]] < 2:
            continue
        a = chi.color_of[e]
        for x, y in class_edges[a]:
            if (x, y) != e and deg[x] == 0 and deg[y] == 0:
                return e, (x, y)
        u, v = e
        for keep, drop in ((v, u), (u, v)):
            if deg[drop] != 2:  # the removed endpoint must stay on its path
                continue
            for w in g.adj[keep]:
                if (deg[w] == 0 and w in adj_sets[drop]
                        and coloring.color(keep, w) == a):
                    return e, canonical_edge(keep, w)
    return None


def untouched_pair_colors(g: Graph, chi: CharacteristicSubgraph,
                          coloring: EdgeColoring) -> list:
    """Colors on paths with >= 2 edges that still have an edge between two
    untouched vertices; empty at a swap fixpoint."""
    class_edges = coloring.classes()
    path_index = chi.path_of()
    path_len = {i: len(p) - 1 for i, p in enumerate(chi.paths)}
    deg = chi.degree_of
    out = []
    for e in chi.edges:
        if path_len[path_index[e]] < 2:
            continue
        a = chi.color_of[e]
        if any((x, y) != e and deg[x] == 0 and deg[y] == 0
               for x, y in class_edges[a]):
            out.append(a)
    return out


@dataclass
class DiagnosticsReport:
    """Every counting quantity for one instance, with exact rational bounds.

    kappa and all bound factors are Fractions, never floats. Entries of
    inequality_results were asserted (a False would have raised
    InvariantViolation); entries of reported depend on extremal choices and
    are recorded without being enforced.
    """

    n: int
    delta: int
    Delta: int
    matching_size: int | None = None
    kappa: Fraction | None = None
    c: int | None = None
    n0: int | None = None
    n1: int | None = None
    n2: int | None = None
    t: int | None = None
    h0: int | None = None
    h1: int | None = None
    h2: int | None = None
    bounds: dict = field(default_factory=dict)
    inequality_results: dict = field(default_factory=dict)
    reported: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return {"num": x.numerator, "den": x.denominator}
            return x

        out = {}
        for name in ("n", "delta", "Delta", "matching_size", "kappa", "c",
                     "n0", "n1", "n2", "t", "h0", "h1", "h2"):
            out[name] = enc(getattr(self, name))
        out["bounds"] = {k: enc(v) for k, v in self.bounds.items()}
        out["inequality_results"] = dict(self.inequality_results)
        out["reported"] = dict(self.reported)
        out["flags"] = dict(self.flags)
        return out


def _assert_holds(checks: dict, name: str, holds: bool, detail: str) -> None:
    checks[name] = holds
    if not holds:
        raise InvariantViolation(f"{name} failed: {detail}")


def diagnostics_perfect_matching(g: Graph, coloring: EdgeColoring) -> DiagnosticsReport:
    """Degree-class counting over a characteristic subgraph.

    Builds the subgraph, partitions vertices by their degree in it, checks
    the double-counting inequality over edges from saturated (degree-2)
    vertices, its triangle-free sharpening, the derived chain inequalities,
    and the color-count bound they imply. Any failure raises
    InvariantViolation; tight intermediate steps are flagged.
    """
    require_min_degree(g, 3)
    _require_valid(g, coloring)
    chi = characteristic_subgraph(g, coloring)
    n, delta = g.n, g.min_degree
    n0, n1, n2 = chi.n0, chi.n1, chi.n2
    c = chi.c
    tf = is_triangle_free(g)
    checks = {}
    flags = {"triangle_free": tf}

    _assert_holds(checks, "degree_class_partition", n0 + n1 + n2 == n,
                  f"{n0}+{n1}+{n2} != {n}")
    _assert_holds(checks, "color_count_identity", 2 * c == 2 * n2 + n1,
                  f"2*{c} != 2*{n2}+{n1}")

    # Edges from saturated vertices through non-subgraph edges, and the
    # per-vertex caps on how many of them one outside vertex can absorb.
    deg_h = [0] * n
    for u, v in g.edges:
        if (u, v) in chi.edge_set:
            continue
        u_sat = u in chi.n2_set
        v_sat = v in chi.n2_set
        _assert_holds(checks, "no_edge_between_saturated",
                      not (u_sat and v_sat), f"edge ({u}, {v})")
        if u_sat:
            deg_h[v] += 1
        elif v_sat:
            deg_h[u] += 1
    cap_n0, cap_n1 = (2, 1) if tf else (4, 2)
    for v in chi.n0_set:
        _assert_holds(checks, "absorption_cap_degree0", deg_h[v] <= cap_n0,
                      f"vertex {v} absorbs {deg_h[v]} > {cap_n0}")
    for v in chi.n1_set:
        _assert_holds(checks, "absorption_cap_degree1", deg_h[v] <= cap_n1,
                      f"vertex {v} absorbs {deg_h[v]} > {cap_n1}")

    _assert_holds(checks, "saturated_count_bound",
                  n2 * (delta - 2) <= 4 * n0 + 2 * n1,
                  f"{n2}*({delta}-2) > 4*{n0}+2*{n1}")
    flags["saturated_count_bound_tight"] = n2 * (delta - 2) == 4 * n0 + 2 * n1
    if tf:
        _assert_holds(checks, "saturated_count_bound_triangle_free",
                      n2 * (delta - 2) <= 2 * n0 + n1,
                      f"{n2}*({delta}-2) > 2*{n0}+{n1}")
        flags["saturated_count_bound_triangle_free_tight"] = (
            n2 * (delta - 2) == 2 * n0 + n1)

    # Chain used to turn the count bound into a color bound.
    _assert_holds(checks, "saturated_chain_bound",
                  n2 * delta <= 2 * n + 2 * n0,
                  f"{n2}*{delta} > 2*{n}+2*{n0}")
    flags["saturated_chain_bound_tight"] = n2 * delta == 2 * n + 2 * n0
    _assert_holds(checks, "saturated_gap_bound",
                  (n2 - n0) * delta <= 2 * n,
                  f"({n2}-{n0})*{delta} > 2*{n}")
    flags["saturated_gap_bound_tight"] = (n2 - n0) * delta == 2 * n

    bounds = {
        "perfect_matching_factor": 1 + Fraction(2, delta),
        "colors_cap": Fraction(n, 2) * (1 + Fraction(2, delta)),
    }
    _assert_holds(checks, "colors_le_cap", c <= bounds["colors_cap"],
                  f"{c} > {bounds['colors_cap']}")
    if tf:
        bounds["triangle_free_factor"] = 1 + Fraction(1, delta - 1)
        bounds["colors_cap_triangle_free"] = (
            Fraction(n, 2) * (1 + Fraction(1, delta - 1)))
        _assert_holds(checks, "colors_le_cap_triangle_free",
                      c <= bounds["colors_cap_triangle_free"],
                      f"{c} > {bounds['colors_cap_triangle_free']}")

    return DiagnosticsReport(
        n=n, delta=delta, Delta=g.max_degree, c=c, n0=n0, n1=n1, n2=n2,
        bounds=bounds, inequality_results=checks, flags=flags)


def diagnostics_general(g: Graph, coloring: EdgeColoring,
                        m: Matching) -> DiagnosticsReport:
    """Alternate-edge selection diagnostics against a maximum matching.

    Saturates the characteristic subgraph, selects alternate edges along
    each path starting with the first, takes the left endpoint of every
    unselected edge, hands each of those vertices delta-2 canonical
    non-subgraph edges, and partitions the remaining vertices by how many
    such edges they receive. Asserts independence of the endpoint set, the
    special-edge balance (an exact equality), its relaxation, and
    colors <= matching size + unselected count; the two quantities that rely
    on an extremal subgraph choice are reported, not asserted.
    """
    require_min_degree(g, 3)
    _require_valid(g, coloring)
    for e in m.edges:
        if e not in g.edge_set:
            raise ColoringError(f"matching edge {e} not in graph")
    if not verify_maximality(g, m):
        raise ColoringError("matching is not maximum (augmenting path exists)")

    chi = saturate_path_swaps(g, characteristic_subgraph(g, coloring), coloring)
    n, delta = g.n, g.min_degree
    checks = {}
    flags = {}

    selected = []
    unselected = []
    left_ends = []
    for path in chi.paths:
        for j in range(len(path) - 1):
            e = canonical_edge(path[j], path[j + 1])
            if j % 2 == 0:
                selected.append(e)
            else:
                unselected.append(e)
                left_ends.append(path[j])
    t = len(unselected)
    t_set = set(left_ends)
    _assert_holds(checks, "left_endpoints_distinct", len(t_set) == t,
                  f"{len(t_set)} != {t}")
    _assert_holds(checks, "selection_is_matching",
                  len({x for e in selected for x in e}) == 2 * len(selected),
                  "selected edges share vertices")
    _assert_holds(checks, "selection_within_maximum",
                  len(selected) <= m.size,
                  f"{len(selected)} > {m.size}")
    _assert_holds(checks, "colors_split_identity",
                  chi.c == len(selected) + t,
                  f"{chi.c} != {len(selected)}+{t}")

    for u in sorted(t_set):
        for v in g.adj[u]:
            _assert_holds(checks, "left_endpoints_independent",
                          v not in t_set, f"edge ({u}, {v}) inside the set")

    special_count = [0] * n
    for v in sorted(t_set):
        avail = [w for w in g.adj[v]
                 if canonical_edge(v, w) not in chi.edge_set]
        _assert_holds(checks, "special_edges_available",
                      len(avail) >= delta - 2,
                      f"vertex {v} has only {len(avail)} spare edges")
        for w in avail[:delta - 2]:
            special_count[w] += 1

    h = [0, 0, 0]
    for v in range(n):
        if v in t_set:
            continue
        _assert_holds(checks, "special_absorption_cap", special_count[v] <= 2,
                      f"vertex {v} receives {special_count[v]} special edges")
        h[special_count[v]] += 1
    h0, h1, h2 = h

    _assert_holds(checks, "outside_partition", h0 + h1 + h2 == n - t,
                  f"{h0}+{h1}+{h2} != {n}-{t}")
    _assert_holds(checks, "special_edge_balance",
                  t * (delta - 2) == 2 * h2 + h1,
                  f"{t}*({delta}-2) != 2*{h2}+{h1}")
    _assert_holds(checks, "special_edge_relaxation",
                  t * (delta - 1) <= n + h2,
                  f"{t}*({delta}-1) > {n}+{h2}")
    _assert_holds(checks, "colors_le_matching_plus_unselected",
                  chi.c <= m.size + t, f"{chi.c} > {m.size}+{t}")

    kappa = Fraction(n, m.size)
    epsilon = (kappa + 2) / (delta - 1)
    reported = {
        "h2_le_twice_matching": h2 <= 2 * m.size,
        "unselected_le_matching_excess": Fraction(t) <= m.size * epsilon,
    }
    bounds = {
        "general_factor": 1 + epsilon,
        "general_factor_weak": 1 + (kappa + 2) / (delta - 2),
        "unselected_cap": m.size * epsilon,
    }
    return DiagnosticsReport(
        n=n, delta=delta, Delta=g.max_degree, matching_size=m.size,
        kappa=kappa, c=chi.c, n0=chi.n0, n1=chi.n1, n2=chi.n2,
        t=t, h0=h0, h1=h1, h2=h2, bounds=bounds,
        inequality_results=checks, reported=reported, flags=flags)


def bound_report(g: Graph) -> DiagnosticsReport:
    """Instance-level bound factors, with no coloring involved.

    Computes the maximum matching, the vertex-to-matching ratio exactly,
    every applicable factor as a Fraction, and which guarantees apply
    (perfect matching, triangle-free, half-degree threshold). Asserts the
    ratio's degree bound, which follows from matching maximality alone.
    """
    require_min_degree(g, 3)
    if not is_connected(g):
        raise ColoringError("bound report requires a connected graph")
    m = maximum_matching(g)
    n, delta, cap = g.n, g.min_degree, g.max_degree
    kappa = Fraction(n, m.size)
    checks = {}
    _assert_holds(checks, "kappa_degree_bound",
                  kappa <= Fraction(2 * (cap + delta), delta),
                  f"{kappa} > 2*({cap}+{delta})/{delta}")
    flags = {
        "perfect_matching": is_perfect(g, m),
        "triangle_free": is_triangle_free(g),
        "half_degree": delta >= n // 2,
    }
    bounds = {
        "general_factor": 1 + (kappa + 2) / (delta - 1),
        "general_factor_weak": 1 + (kappa + 2) / (delta - 2),
        "kappa_cap": Fraction(2 * (cap + delta), delta),
    }
    if flags["perfect_matching"]:
        bounds["perfect_matching_factor"] = 1 + Fraction(2, delta)
        if flags["triangle_free"]:
            bounds["triangle_free_factor"] = 1 + Fraction(1, delta - 1)
    return DiagnosticsReport(
        n=n, delta=delta, Delta=cap, matching_size=m.size, kappa=kappa,
        bounds=bounds, inequality_results=checks, flags=flags)


@dataclass(frozen=True)
class RatioVerdict:
    """Outcome of comparing the exact optimum against the algorithm's count
    under every applicable guarantee. status is "skipped" when the oracle
    ran out of budget; integer and rational arithmetic throughout."""

    status: str  # "ok" | "fail" | "skipped"
    opt: int | None
    alg: int
    checks: dict
    factors: dict

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def check_ratio(g: Graph, node_budget: int | None = None) -> RatioVerdict:
    """Compute the optimum and the algorithm's count, then check every
    guarantee that applies to this instance."""
    alg_run = run_algorithm(g)
    alg = alg_run.alg_colors
    result = exact_opt(g, node_budget)
    if result.status == "unknown":
        return RatioVerdict("skipped", None, alg, {}, {})
    opt = result.opt_colors

    checks = {"opt_ge_alg": opt >= alg}
    factors = {}
    n, delta = g.n, g.min_degree
    if delta >= 3:
        msize = alg_run.matching_used.size
        kappa = Fraction(n, msize)
        factors["general_factor"] = 1 + (kappa + 2) / (delta - 1)
        factors["general_factor_weak"] = 1 + (kappa + 2) / (delta - 2)
        checks["ratio_general"] = opt <= factors["general_factor"] * alg
        checks["ratio_general_weak"] = opt <= factors["general_factor_weak"] * alg
        if is_perfect(g, alg_run.matching_used):
            factors["perfect_matching_factor"] = 1 + Fraction(2, delta)
            checks["ratio_perfect_matching"] = (
                opt <= factors["perfect_matching_factor"] * alg)
            if is_triangle_free(g):
                factors["triangle_free_factor"] = 1 + Fraction(1, delta - 1)
                checks["ratio_triangle_free"] = (
                    opt <= factors["triangle_free_factor"] * alg)
    if delta >= n // 2:
        checks["additive_half_degree"] = opt <= alg + 1
        if n % 2 == 0 and delta > n // 2:
            checks["optimal_half_degree"] = opt == alg
    status = "ok" if all(checks.values()) else "fail"
    return RatioVerdict(status, opt, alg, checks, factors)
