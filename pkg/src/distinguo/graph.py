"""Simple undirected graphs, their symmetric digraphs, and file formats.

Vertices are ``0..n-1`` internally and ``1..n`` in edge-list files.  The
symmetric digraph of a graph is never stored: its arcs are the ordered
pairs ``(u, v)`` with ``uv`` an edge, produced on demand by
:meth:`SimpleGraph.arcs`.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from distinguo.exceptions import DisconnectedGraphError, GraphFormatError

Arc = tuple[int, int]
Edge = tuple[int, int]

GRAPH6_MAX_N = 62
FAMILIES = ("path", "cycle", "star", "complete", "complete_bipartite")


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph with sorted adjacency tuples.

    Build instances with :meth:`from_edges`; the raw constructor trusts its
    arguments.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    _neighbour_sets: tuple[frozenset, ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        object.__setattr__(
            self, "_neighbour_sets", tuple(frozenset(a) for a in self.adjacency)
        )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbour_sets[u]

    def edges(self) -> Iterator[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield (u, v)

    def arcs(self) -> Iterator[Arc]:
        """All ``2m`` arcs of the symmetric digraph, lexicographically."""
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                yield (u, v)

    def is_connected(self) -> bool:
        return not unreached_vertices(self, 0) if self.n else True

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return SimpleGraph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))


def unreached_vertices(g: SimpleGraph, root: int) -> set[int]:
    seen = {root}
    todo = [root]
    while todo:
        v = todo.pop()
        for u in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return set(range(g.n)) - seen


def require_connected(g: SimpleGraph) -> None:
    if g.n == 0:
        raise DisconnectedGraphError(set())
    missing = unreached_vertices(g, 0)
    if missing:
        raise DisconnectedGraphError(missing)


# ---------------------------------------------------------------------------
# BFS scaffold
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BfsTree:
    root: int
    order: tuple[int, ...]
    parent: dict
    depth: dict

    def children(self, v: int) -> list[int]:
        return [u for u in self.order if self.parent.get(u) == v]


def bfs_tree(g: SimpleGraph, root: int) -> BfsTree:
    """Breadth-first tree visiting neighbours in increasing index order."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} is not a vertex")
    order = [root]
    parent: dict[int, int] = {}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if u not in depth:
                depth[u] = depth[v] + 1
                parent[u] = v
                order.append(u)
                queue.append(u)
    if len(order) != g.n:
        raise DisconnectedGraphError(set(range(g.n)) - set(depth))
    return BfsTree(root, tuple(order), parent, depth)


# ---------------------------------------------------------------------------
# Families and corpora
# ---------------------------------------------------------------------------


def generate_family(kind: str, *params: int) -> SimpleGraph:
    """Canonically labelled member of a named family.

    ``path(n)`` and ``cycle(n)`` are labelled in walk order, ``star(d)`` has
    centre 0, and ``complete_bipartite(a, b)`` has parts ``0..a-1`` and
    ``a..a+b-1``.
    """
    kind = kind.lower()
    expected = 2 if kind == "complete_bipartite" else 1
    if kind not in FAMILIES:
        raise ValueError(f"unknown family {kind!r}; choose from {', '.join(FAMILIES)}")
    if len(params) != expected:
        raise ValueError(f"{kind} takes {expected} parameter(s), got {len(params)}")
    if kind == "path":
        (n,) = params
        if n < 2:
            raise ValueError("path needs n >= 2")
        return SimpleGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if kind == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return SimpleGraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))
    if kind == "star":
        (d,) = params
        if d < 1:
            raise ValueError("star needs at least one leaf")
        return SimpleGraph.from_edges(d + 1, ((0, i) for i in range(1, d + 1)))
    if kind == "complete":
        (n,) = params
        if n < 1:
            raise ValueError("complete graph needs n >= 1")
        return SimpleGraph.from_edges(n, itertools.combinations(range(n), 2))
    a, b = params
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite needs both parts non-empty")
    return SimpleGraph.from_edges(
        a + b, ((i, a + j) for i in range(a) for j in range(b))
    )


def petersen_graph() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + spokes + inner)


def random_tree(n: int, max_degree: int, rng: random.Random) -> SimpleGraph:
    """Random tree on ``n`` vertices whose maximum degree is exactly ``max_degree``.

    Vertex 0 is made a hub of degree ``max_degree``; the rest attach to
    uniformly chosen vertices that still have spare degree.
    """
    if max_degree < 1 or n < max_degree + 1:
        raise ValueError("need n >= max_degree + 1")
    if max_degree == 1 and n > 2:
        raise ValueError("a tree with max degree 1 is K2")
    edges = [(0, i) for i in range(1, max_degree + 1)]
    deg = [max_degree] + [1] * max_degree + [0] * (n - max_degree - 1)
    open_ = [v for v in range(1, max_degree + 1) if deg[v] < max_degree]
    for v in range(max_degree + 1, n):
        p = rng.choice(open_)
        edges.append((p, v))
        deg[p] += 1
        deg[v] = 1
        if deg[p] >= max_degree:
            open_.remove(p)
        if max_degree > 1:
            open_.append(v)
    perm = list(range(n))
    rng.shuffle(perm)
    return SimpleGraph.from_edges(n, ((perm[u], perm[v]) for u, v in edges))


def random_connected_graph(n: int, p: float, rng: random.Random) -> SimpleGraph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    if n < 1:
        raise ValueError("n must be positive")
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    perm = list(range(n))
    rng.shuffle(perm)
    return SimpleGraph.from_edges(n, ((perm[u], perm[v]) for u, v in sorted(edges)))


def connected_graphs(n: int, up_to_isomorphism: bool = True) -> list[SimpleGraph]:
    """All connected graphs on ``n`` labelled vertices, by edge subset.

    With ``up_to_isomorphism`` one representative per isomorphism class is
    kept, chosen by the minimum relabelled edge mask over all ``n!`` vertex
    permutations.  Intended for ``n <= 7``.
    """
    import numpy as np

    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return [SimpleGraph(1, ((),))]
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(len(pairs))) & 1).astype(np.int64)
    # connectivity: every vertex reachable from 0, computed with bit tricks
    reach = np.ones(len(masks), dtype=np.int64)
    adj_bits = np.zeros((len(masks), n), dtype=np.int64)
    for (u, v), i in index.items():
        adj_bits[:, u] |= bits[:, i] << v
        adj_bits[:, v] |= bits[:, i] << u
    for _ in range(n):
        grown = reach.copy()
        for v in range(n):
            grown |= np.where((reach >> v) & 1, adj_bits[:, v], 0)
        reach = grown
    full = (1 << n) - 1
    keep = masks[reach == full]
    if up_to_isomorphism:
        kbits = bits[keep]
        canon = np.full(len(keep), np.iinfo(np.int64).max, dtype=np.int64)
        for perm in itertools.permutations(range(n)):
            weights = np.array(
                [1 << index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs],
                dtype=np.int64,
            )
            canon = np.minimum(canon, kbits @ weights)
        keep = np.unique(canon)
    out = []
    for mask in keep.tolist():
        out.append(
            SimpleGraph.from_edges(n, (p for i, p in enumerate(pairs) if mask >> i & 1))
        )
    return out


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def parse_graph(text: str, format: str = "edge-list") -> SimpleGraph:
    if format in ("edge-list", "edgelist", "edges"):
        return _parse_edge_list(text)
    if format == "graph6":
        return _parse_graph6(text)
    raise ValueError(f"unknown graph format {format!r}")


def _parse_edge_list(text: str) -> SimpleGraph:
    n = None
    declared_m = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None or pairs or len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: misplaced or malformed header")
            try:
                n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header") from None
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 1 or v < 1 or (n is not None and (u > n or v > n)):
            raise GraphFormatError(f"line {lineno}: vertex out of range in {raw!r}")
        pairs.append((u - 1, v - 1))
    if n is None:
        n = max((max(p) for p in pairs), default=-1) + 1
    g = SimpleGraph.from_edges(n, pairs)
    if declared_m is not None and declared_m != g.m:
        raise GraphFormatError(f"header declares {declared_m} edges, found {g.m}")
    return g


def emit_edge_list(g: SimpleGraph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _parse_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise GraphFormatError("graph6 string contains bytes outside 63..126")
    n = ord(s[0]) - 63
    if n > GRAPH6_MAX_N:
        raise GraphFormatError("graph6 sizes above 62 vertices are not supported")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(
            f"graph6 length mismatch: n={n} needs {(nbits + 5) // 6} data bytes, got {len(body)}"
        )
    bits = []
    for ch in body:
        x = ord(ch) - 63
        bits.extend((x >> (5 - i)) & 1 for i in range(6))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return SimpleGraph.from_edges(n, edges)


def emit_graph6(g: SimpleGraph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise ValueError("graph6 output limited to 62 vertices")
    bits = [int(g.has_edge(i, j)) for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(63 + g.n)]
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        out.append(chr(63 + x))
    return "".join(out)
