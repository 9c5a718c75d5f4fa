"""Core data model: simple undirected graphs, edge 2-colorings, text formats.

Vertices are dense 0-indexed integers. Edges are stored canonically as
(min, max) tuples, which keeps hashing, file output, and color relabeling
deterministic across runs.
"""

from __future__ import annotations

from typing import NamedTuple


class GraphError(ValueError):
    """Bad graph construction input."""


class SelfLoopError(GraphError):
    """Edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """Edge pair listed more than once."""


class VertexRangeError(GraphError):
    """Vertex id outside 0..n-1."""


class EdgeNotInGraphError(GraphError):
    """Operation referenced an edge the graph does not contain."""


class MinDegreeError(GraphError):
    """Operation requires a larger minimum degree than the graph has."""


class ColoringError(ValueError):
    """Bad edge-coloring input."""


class PartialColoringError(ColoringError):
    """Coloring does not cover every edge of the host graph."""


class ParseError(ValueError):
    """File-format error, carrying the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def canonical_edge(u: int, v: int) -> tuple[int, int]:
    """Return the (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Instances are built through :func:`build_graph`; adjacency and the edge
    set are derived once at construction and never mutated, so graphs are
    safe to share across concurrent workers.
    """

    __slots__ = ("n", "edges", "adj", "edge_set")

    def __init__(self, n: int, edges: tuple, adj: tuple):
        self.n = n
        self.edges = edges
        self.adj = adj
        self.edge_set = frozenset(edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_set

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list) -> Graph:
    """Validate and freeze a graph from a vertex count and edge pairs.

    Rejects self-loops, duplicate pairs (in either orientation), and
    out-of-range vertices with distinct error types.
    """
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    seen = set()
    edges = []
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        e = canonical_edge(u, v)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    edges.sort()
    nbrs = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in nbrs)
    return Graph(n, tuple(edges), adj)


def require_min_degree(g: Graph, bound: int) -> None:
    if g.min_degree < bound:
        raise MinDegreeError(
            f"minimum degree {g.min_degree} < required {bound}")


def is_connected(g: Graph) -> bool:
    """True iff the graph has one connected component (n <= 1 is connected)."""
    if g.n <= 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == g.n


def components_after_removal(g: Graph, removed_edges) -> list[list[int]]:
    """Connected components (vertices kept) after deleting the given edges.

    Returns sorted vertex lists, ordered by smallest member; together they
    partition the vertex set.
    """
    removed = set()
    for u, v in removed_edges:
        e = canonical_edge(u, v)
        if e not in g.edge_set:
            raise EdgeNotInGraphError(f"edge {e} not in graph")
        removed.add(e)
    comps = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if not seen[y] and canonical_edge(x, y) not in removed:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_triangle_free(g: Graph) -> bool:
    """True iff no three vertices are pairwise adjacent."""
    adj_sets = [set(a) for a in g.adj]
    for u, v in g.edges:
        if adj_sets[u] & adj_sets[v]:
            return False
    return True


class EdgeColoring:
    """Total map from canonical edges to integer color ids.

    The object itself does not reference a host graph; totality and the
    two-colors-per-vertex constraint are checked against a graph by
    :func:`validate_coloring`.
    """

    __slots__ = ("color_of", "color_count")

    def __init__(self, color_of: dict):
        canon = {}
        for (u, v), c in color_of.items():
            e = canonical_edge(u, v)
            if e in canon and canon[e] != c:
                raise ColoringError(f"conflicting colors for edge {e}")
            canon[e] = int(c)
        self.color_of = canon
        self.color_count = len(set(canon.values()))

    def color(self, u: int, v: int) -> int:
        return self.color_of[canonical_edge(u, v)]

    def classes(self) -> dict:
        """Color id -> sorted list of edges, keyed in ascending color order."""
        out = {}
        for e in sorted(self.color_of):
            out.setdefault(self.color_of[e], []).append(e)
        return dict(sorted(out.items()))

    def normalized(self) -> "EdgeColoring":
        """Relabel colors to 1..c in order of first appearance over the
        canonical edge order."""
        relabel = {}
        out = {}
        for e in sorted(self.color_of):
            c = self.color_of[e]
            if c not in relabel:
                relabel[c] = len(relabel) + 1
            out[e] = relabel[c]
        return EdgeColoring(out)

    def __eq__(self, other):
        return isinstance(other, EdgeColoring) and self.color_of == other.color_of

    def __repr__(self):
        return f"EdgeColoring(edges={len(self.color_of)}, colors={self.color_count})"


class ValidationResult(NamedTuple):
    ok: bool
    vertex: int | None
    palette: tuple


def vertex_palettes(g: Graph, coloring: EdgeColoring) -> list[set]:
    """Set of colors incident at each vertex. Coloring must be total."""
    _require_total(g, coloring)
    pal = [set() for _ in range(g.n)]
    for (u, v), c in coloring.color_of.items():
        pal[u].add(c)
        pal[v].add(c)
    return pal


def _require_total(g: Graph, coloring: EdgeColoring) -> None:
    keys = set(coloring.color_of)
    if keys - g.edge_set:
        extra = sorted(keys - g.edge_set)[0]
        raise ColoringError(f"colored edge {extra} not in graph")
    if g.edge_set - keys:
        missing = sorted(g.edge_set - keys)[0]
        raise PartialColoringError(f"edge {missing} has no color")


def validate_coloring(g: Graph, coloring: EdgeColoring) -> ValidationResult:
    """Check the at-most-two-colors-per-vertex constraint.

    Returns (True, None, ()) on success, otherwise the lowest offending
    vertex with its full palette. Raises on partial or overfull colorings.
    """
    pal = vertex_palettes(g, coloring)
    for v in range(g.n):
        if len(pal[v]) > 2:
            return ValidationResult(False, v, tuple(sorted(pal[v])))
    return ValidationResult(True, None, ())


# ---------------------------------------------------------------------------
# Text formats. Writers emit bit-exact canonical files; parsers skip blank
# lines and lines starting with '#'.

def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line


def parse_edge_list(text: str) -> Graph:
    """Parse the "n m" header plus m lines "u v" with 0 <= u < v < n."""
    lines = _content_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing header line 'n m'") from None
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(line_no, f"expected 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(line_no, f"non-integer header {header!r}") from None
    edges = []
    seen = set()
    for line_no, line in lines:
        if len(edges) == m:
            raise ParseError(line_no, f"unexpected extra line {line!r}")
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(line_no, f"non-integer vertex in {line!r}") from None
        if u == v:
            raise ParseError(line_no, f"self-loop at vertex {u}")
        if not (0 <= u < v < n):
            raise ParseError(line_no, f"edge ({u}, {v}) violates 0 <= u < v < n")
        if (u, v) in seen:
            raise ParseError(line_no, f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))
    if len(edges) != m:
        raise ParseError(line_no if edges else 1,
                         f"expected {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def format_coloring(g: Graph, coloring: EdgeColoring) -> str:
    """One line "u v c" per edge, in canonical edge order."""
    _require_total(g, coloring)
    lines = [f"{u} {v} {coloring.color_of[(u, v)]}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> EdgeColoring:
    """Parse lines "u v c"; totality against a graph is checked separately."""
    color_of = {}
    for line_no, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(line_no, f"expected 'u v c', got {line!r}")
        try:
            u, v, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(line_no, f"non-integer field in {line!r}") from None
        if u == v:
            raise ParseError(line_no, f"self-loop at vertex {u}")
        e = canonical_edge(u, v)
        if e in color_of:
            raise ParseError(line_no, f"duplicate edge ({u}, {v})")
        color_of[e] = c
    return EdgeColoring(color_of)
