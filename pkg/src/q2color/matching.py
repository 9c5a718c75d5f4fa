"""Maximum matching in general graphs.

The primary solver is a deterministic augmenting-path search with blossom
contraction (greedy seed, then one search per exposed vertex, scanning
vertices and neighbors in index order). An independent maximality
certificate re-derives "no augmenting path exists" with a structurally
different search so the two never share a bug.
"""

from __future__ import annotations

from collections import deque

from .graph import Graph, GraphError, ParseError, _content_lines, canonical_edge


class MatchingError(GraphError):
    """Edge set is not a matching of the host graph."""


class Matching:
    """Set of pairwise vertex-disjoint edges of a host graph."""

    __slots__ = ("edges", "mate")

    def __init__(self, g: Graph, edges):
        mate = {}
        canon = sorted({canonical_edge(u, v) for u, v in edges})
        for u, v in canon:
            if (u, v) not in g.edge_set:
                raise MatchingError(f"edge ({u}, {v}) not in graph")
            if u in mate or v in mate:
                raise MatchingError(f"edge ({u}, {v}) shares a vertex with another edge")
            mate[u] = v
            mate[v] = u
        self.edges = tuple(canon)
        self.mate = mate

    @property
    def size(self) -> int:
        return len(self.edges)

    def covers(self, v: int) -> bool:
        return v in self.mate

    def partner(self, v: int):
        return self.mate.get(v)

    def __repr__(self):
        return f"Matching(size={self.size})"


def maximum_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching, deterministic for a fixed input graph."""
    n = g.n
    match = [-1] * n
    for u, v in g.edges:
        if match[u] == -1 and match[v] == -1:
            match[u] = v
            match[v] = u
    for root in range(n):
        if match[root] == -1:
            _augment_from(g, match, root)
    return Matching(g, [(v, match[v]) for v in range(n) if v < match[v]])


def _augment_from(g: Graph, match: list, root: int) -> bool:
    """Grow an alternating BFS tree from `root`; contract odd cycles by
    remapping their vertices onto a common base, and flip the matching along
    the first augmenting path found."""
    n = g.n
    p = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lowest_common_base(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = p[match[b]]

    def mark_path(v: int, stop: int, child: int, in_blossom: list) -> None:
        while base[v] != stop:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    while queue:
        v = queue.popleft()
        for to in g.adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and p[match[to]] != -1):
                cur = lowest_common_base(v, to)
                in_blossom = [False] * n
                mark_path(v, cur, to, in_blossom)
                mark_path(to, cur, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif p[to] == -1:
                p[to] = v
                if match[to] == -1:
                    while to != -1:
                        prev = p[to]
                        nxt = match[prev]
                        match[to] = prev
                        match[prev] = to
                        to = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def is_perfect(g: Graph, m: Matching) -> bool:
    """True iff the matching covers every vertex."""
    _require_matching_of(g, m)
    return 2 * m.size == g.n


def verify_maximality(g: Graph, m: Matching) -> bool:
    """True iff no augmenting path exists for `m` in `g`.

    Independent certificate: alternating-forest search over exposed roots
    with explicit blossom contraction into fresh super-vertices, recursing
    on the contracted graph. Does not share code with maximum_matching.
    """
    _require_matching_of(g, m)
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    return not _has_augmenting_path(adj, dict(m.mate), g.n)


def _require_matching_of(g: Graph, m: Matching) -> None:
    for e in m.edges:
        if e not in g.edge_set:
            raise MatchingError(f"edge {e} not in graph")


def _has_augmenting_path(adj: dict, mate: dict, next_id: int) -> bool:
    exposed = sorted(v for v in adj if v not in mate)
    if len(exposed) < 2:
        return False
    parent = {r: None for r in exposed}
    depth = {r: 0 for r in exposed}
    root_of = {r: r for r in exposed}
    queue = deque(exposed)
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in depth:
                # w is matched (an exposed vertex would already be a root)
                parent[w] = v
                depth[w] = depth[v] + 1
                root_of[w] = root_of[v]
                x = mate[w]
                parent[x] = w
                depth[x] = depth[w] + 1
                root_of[x] = root_of[v]
                queue.append(x)
            elif depth[w] % 2 == 0:
                if root_of[w] != root_of[v]:
                    return True
                return _contract_and_recurse(adj, mate, parent, v, w, next_id)
    return False


def _contract_and_recurse(adj, mate, parent, v, w, next_id) -> bool:
    up_v = _ancestors(parent, v)
    up_w = _ancestors(parent, w)
    common = set(up_v) & set(up_w)
    lca = next(x for x in up_v if x in common)
    cycle = set(up_v[:up_v.index(lca) + 1]) | set(up_w[:up_w.index(lca) + 1])
    blob = next_id
    new_adj = {blob: set()}
    for x, nbrs in adj.items():
        if x in cycle:
            new_adj[blob] |= nbrs - cycle
            continue
        kept = nbrs - cycle
        if nbrs & cycle:
            kept = kept | {blob}
        new_adj[x] = kept
    for x in new_adj[blob]:
        new_adj[x] = new_adj[x] | {blob}
    new_mate = {}
    for a, b in mate.items():
        if a in cycle and b in cycle:
            continue
        if a in cycle:
            new_mate[blob] = b
            new_mate[b] = blob
        elif b not in cycle:
            new_mate[a] = b
    return _has_augmenting_path(new_adj, new_mate, next_id + 1)


def _ancestors(parent: dict, v) -> list:
    out = [v]
    while parent[v] is not None:
        v = parent[v]
        out.append(v)
    return out


def format_matching(m: Matching) -> str:
    """One line "u v" per matched edge, canonical order."""
    return "".join(f"{u} {v}\n" for u, v in m.edges)


def parse_matching(text: str, g: Graph) -> Matching:
    edges = []
    for line_no, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer vertex in {line!r}") from None
        edges.append((u, v))
    return Matching(g, edges)
