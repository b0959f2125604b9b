"""Independent checks on arc-colourings of symmetric digraphs.

Nothing here trusts a constructor: patterns are found by scanning arcs and
colour-preserving automorphisms are found by an individualisation and
refinement search over vertex maps, with an exhaustive permutation sweep
available as a cross-check on small graphs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from distinguo.exceptions import GraphFormatError, SearchBudgetExceeded, SizeLimitError
from distinguo.graph import Arc, SimpleGraph, require_connected

DEFAULT_NODE_BUDGET = 10**8
EXHAUSTIVE_MAX_N = 8
PATTERNS = ("two_cycle", "two_path")


@dataclass(frozen=True)
class ArcColouring:
    """Total map from the arcs of the symmetric digraph to ``1..k``."""

    graph: SimpleGraph
    k: int
    colour: Mapping[Arc, int]

    def __post_init__(self):
        colour = dict(self.colour)
        arcs = list(self.graph.arcs())
        if len(colour) != len(arcs):
            extra = set(colour) - set(arcs)
            if extra:
                raise ValueError(f"colour given for non-arc {min(extra)}")
        for a in arcs:
            x = colour.get(a)
            if x is None:
                raise ValueError(f"arc {a} has no colour")
            if not 1 <= x <= self.k:
                raise ValueError(f"arc {a} has colour {x} outside 1..{self.k}")
        object.__setattr__(self, "colour", colour)

    def __getitem__(self, arc: Arc) -> int:
        return self.colour[arc]

    @property
    def colours_used(self) -> int:
        return len(set(self.colour.values()))

    def recoloured(self, updates: Mapping[Arc, int], k: Optional[int] = None) -> "ArcColouring":
        new = dict(self.colour)
        new.update(updates)
        return ArcColouring(self.graph, self.k if k is None else k, new)

    def renamed(self, mapping: Mapping[int, int]) -> "ArcColouring":
        """Same colouring with colour names permuted by ``mapping``."""
        k = max(self.k, max(mapping.values(), default=0))
        return ArcColouring(
            self.graph, k, {a: mapping.get(x, x) for a, x in self.colour.items()}
        )

    def in_colours(self, v: int) -> list[int]:
        return sorted(self.colour[(u, v)] for u in self.graph.adjacency[v])


def find_monochromatic(c: ArcColouring, pattern: str) -> list[tuple]:
    """Witnesses of a monochromatic forbidden pattern, sorted.

    ``two_cycle`` witnesses are edges ``(u, v)`` with ``u < v``;
    ``two_path`` witnesses are triples ``(u, v, w)`` with ``u != w`` and
    ``c(uv) == c(vw)``.
    """
    g = c.graph
    col = c.colour
    if pattern == "two_cycle":
        return [(u, v) for u, v in g.edges() if col[(u, v)] == col[(v, u)]]
    if pattern == "two_path":
        out = []
        for v in range(g.n):
            nb = g.adjacency[v]
            for u in nb:
                cin = col[(u, v)]
                for w in nb:
                    if w != u and col[(v, w)] == cin:
                        out.append((u, v, w))
        out.sort()
        return out
    raise ValueError(f"unknown pattern {pattern!r}; use one of {PATTERNS}")


def is_proper(c: ArcColouring, forbid_two_cycle: bool = True, forbid_two_path: bool = True) -> bool:
    if forbid_two_cycle and find_monochromatic(c, "two_cycle"):
        return False
    if forbid_two_path and find_monochromatic(c, "two_path"):
        return False
    return True


def preserves(c: ArcColouring, perm: Sequence[int]) -> bool:
    """Whether ``perm`` is a graph automorphism preserving every arc colour."""
    col = c.colour
    g = c.graph
    if sorted(perm) != list(range(g.n)):
        return False
    for (u, v), x in col.items():
        if col.get((perm[u], perm[v])) != x:
            return False
    return True


# ---------------------------------------------------------------------------
# Automorphism search
# ---------------------------------------------------------------------------


@dataclass
class AutomorphismReport:
    generators: list[tuple[int, ...]]
    group_order: int
    orbits: list[tuple[int, ...]]
    fixed: frozenset
    order_is_lower_bound: bool = False
    nodes: int = 0

    @property
    def is_trivial(self) -> bool:
        return self.group_order == 1 and not self.order_is_lower_bound


class _Refiner:
    """Partition refinement keyed on (neighbour cell, out colour, in colour)."""

    def __init__(self, c: ArcColouring, budget: int):
        g = c.graph
        col = c.colour
        self.n = g.n
        self.incident = [
            [(u, col[(v, u)], col[(u, v)]) for u in g.adjacency[v]] for v in range(g.n)
        ]
        self.budget = budget
        self.nodes = 0

    def refine(self, cells: list[tuple[int, ...]]):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"automorphism search exceeded {self.budget} nodes", self.budget
            )
        trace = []
        cell_of = [0] * self.n
        while True:
            for i, cell in enumerate(cells):
                for v in cell:
                    cell_of[v] = i
            new_cells = []
            stamp = []
            for cell in cells:
                groups: dict = {}
                for v in cell:
                    sig = tuple(sorted((cell_of[u], o, i) for u, o, i in self.incident[v]))
                    groups.setdefault(sig, []).append(v)
                for sig in sorted(groups):
                    new_cells.append(tuple(groups[sig]))
                    stamp.append((len(groups[sig]), sig))
            trace.append(tuple(stamp))
            if len(new_cells) == len(cells):
                return new_cells, tuple(trace)
            cells = new_cells

    @staticmethod
    def individualise(cells, t, x):
        rest = tuple(y for y in cells[t] if y != x)
        return cells[:t] + [(x,), rest] + cells[t + 1:]

    @staticmethod
    def target_cell(cells) -> int:
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                return i
        return -1


def _extend(ref: _Refiner, c: ArcColouring, left, right):
    """Find an automorphism mapping the ordered partition ``left`` to ``right``."""
    t = ref.target_cell(left)
    if t < 0:
        perm = [0] * ref.n
        for a, b in zip(left, right):
            perm[a[0]] = b[0]
        return tuple(perm) if preserves(c, perm) else None
    x = left[t][0]
    lcells, ltrace = ref.refine(ref.individualise(left, t, x))
    for y in right[t]:
        rcells, rtrace = ref.refine(ref.individualise(right, t, y))
        if rtrace != ltrace:
            continue
        found = _extend(ref, c, lcells, rcells)
        if found is not None:
            return found
    return None


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def absorb(self, perm):
        for a, b in enumerate(perm):
            ra, rb = self.find(a), self.find(b)
            if ra != rb:
                self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self, n):
        out: dict = {}
        for v in range(n):
            out.setdefault(self.find(v), []).append(v)
        return sorted(tuple(x) for x in out.values())


def _report_from(n, generators, order, lower=False, nodes=0):
    uf = _UnionFind(n)
    for p in generators:
        uf.absorb(p)
    orbits = uf.classes(n)
    fixed = frozenset(o[0] for o in orbits if len(o) == 1)
    return AutomorphismReport(sorted(generators), order, orbits, fixed, lower, nodes)


def colour_automorphisms(
    c: ArcColouring, method: str = "refine", node_budget: Optional[int] = None
) -> AutomorphismReport:
    """Group of vertex permutations preserving the graph and every arc colour.

    ``method="refine"`` walks a stabiliser chain: the leftmost branch of the
    individualisation tree fixes a base, and at each level every candidate
    image of the base point not already in a known orbit is tested with a
    backtracking search.  The group order is the product of the basic
    orbit lengths.  ``method="exhaustive"`` sweeps all ``n!`` permutations
    and is limited to ``n <= 8``.
    """
    g = c.graph
    require_connected(g)
    if method == "exhaustive":
        return _exhaustive(c)
    if method != "refine":
        raise ValueError(f"unknown method {method!r}")
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    ref = _Refiner(c, budget)
    generators: list[tuple[int, ...]] = []
    order = 1
    try:
        cells, _ = ref.refine([tuple(range(g.n))])
        levels = []
        while True:
            t = ref.target_cell(cells)
            if t < 0:
                break
            levels.append((cells, t))
            cells, _ = ref.refine(ref.individualise(cells, t, cells[t][0]))
        for cells, t in reversed(levels):
            b = cells[t][0]
            uf = _UnionFind(g.n)
            for p in generators:
                uf.absorb(p)
            lcells, ltrace = ref.refine(ref.individualise(cells, t, b))
            for y in cells[t][1:]:
                if uf.find(y) == uf.find(b):
                    continue
                rcells, rtrace = ref.refine(ref.individualise(cells, t, y))
                if rtrace != ltrace:
                    continue
                perm = _extend(ref, c, lcells, rcells)
                if perm is not None:
                    generators.append(perm)
                    uf.absorb(perm)
            order *= sum(1 for v in cells[t] if uf.find(v) == uf.find(b))
    except SearchBudgetExceeded as exc:
        exc.partial = _report_from(g.n, generators, max(order, 1), True, ref.nodes)
        raise
    return _report_from(g.n, generators, order, False, ref.nodes)


def _exhaustive(c: ArcColouring) -> AutomorphismReport:
    n = c.graph.n
    if n > EXHAUSTIVE_MAX_N:
        raise SizeLimitError(f"exhaustive sweep limited to n <= {EXHAUSTIVE_MAX_N}")
    identity = tuple(range(n))
    found = [p for p in itertools.permutations(range(n)) if p != identity and preserves(c, p)]
    return _report_from(n, found, len(found) + 1, False, math.factorial(n))


@dataclass(frozen=True)
class Verdict:
    distinguishing: bool
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.distinguishing


def is_distinguishing(c: ArcColouring, node_budget: Optional[int] = None) -> Verdict:
    """Whether only the identity preserves ``c``; otherwise a witness permutation."""
    require_connected(c.graph)
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    ref = _Refiner(c, budget)
    cells, _ = ref.refine([tuple(range(c.graph.n))])
    if ref.target_cell(cells) < 0:
        return Verdict(True)
    report = colour_automorphisms(c, node_budget=budget)
    if report.group_order == 1:
        return Verdict(True)
    witness = min(report.generators)
    if not preserves(c, witness) or witness == tuple(range(c.graph.n)):
        raise AssertionError("automorphism search returned an invalid witness")
    return Verdict(False, witness)


def fixed_vertices(c: ArcColouring, node_budget: Optional[int] = None) -> frozenset:
    return colour_automorphisms(c, node_budget=node_budget).fixed


# ---------------------------------------------------------------------------
# Colouring file format
# ---------------------------------------------------------------------------


def emit_colouring(c: ArcColouring) -> str:
    lines = [f"c {c.graph.n} {c.k}"]
    for u, v in c.graph.arcs():
        lines.append(f"a {u + 1} {v + 1} {c.colour[(u, v)]}")
    return "\n".join(lines) + "\n"


def parse_colouring(text: str) -> ArcColouring:
    """Read the ``c n k`` / ``a u v colour`` format; the graph comes from the arcs."""
    header = None
    colour: dict[Arc, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer field in {raw!r}") from None
        if parts[0] == "c" and len(nums) == 2:
            if header is not None:
                raise GraphFormatError(f"line {lineno}: second header")
            header = nums
        elif parts[0] == "a" and len(nums) == 3:
            if header is None:
                raise GraphFormatError(f"line {lineno}: arc before header")
            u, v, x = nums
            n, k = header
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise GraphFormatError(f"line {lineno}: bad arc {u} {v}")
            if not 1 <= x <= k:
                raise GraphFormatError(f"line {lineno}: colour {x} outside 1..{k}")
            if (u - 1, v - 1) in colour:
                raise GraphFormatError(f"line {lineno}: arc {u} {v} coloured twice")
            colour[(u - 1, v - 1)] = x
        else:
            raise GraphFormatError(f"line {lineno}: unrecognised line {raw!r}")
    if header is None:
        raise GraphFormatError("missing 'c n k' header")
    n, k = header
    for u, v in colour:
        if (v, u) not in colour:
            raise GraphFormatError(f"arc {u + 1} {v + 1} has no opposite arc")
    g = SimpleGraph.from_edges(n, ((u, v) for u, v in colour if u < v))
    return ArcColouring(g, k, colour)
