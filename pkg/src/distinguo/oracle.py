"""Exact ground truth at desk scale.

Chromatic numbers by DSATUR branch and bound, and existence of arc
colourings under a chosen set of forbidden monochromatic patterns by
backtracking with forward checking.  "Proven impossible" and "budget
exceeded" are always kept apart.
"""

from __future__ import annotations

import csv
import io
import os
import random
from dataclasses import dataclass, field
from typing import Optional

from distinguo.exceptions import SearchBudgetExceeded, SizeLimitError
from distinguo.graph import SimpleGraph, require_connected
from distinguo.verify import (
    DEFAULT_NODE_BUDGET,
    ArcColouring,
    colour_automorphisms,
    is_distinguishing,
    is_proper,
)

CHROMATIC_MAX_N = 16
MAX_K = 16
MAX_ARCS = 60
MAX_ARCS_DISTINGUISHING = 40
GROUP_ENUMERATION_LIMIT = 5000

FOUND = "found"
PROVEN = "proven"
BUDGET = "budget_exceeded"


def default_node_budget() -> int:
    env = os.environ.get("DISTINGUO_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class ConstraintSet:
    forbid_two_cycle: bool = True
    forbid_two_path: bool = True
    require_distinguishing: bool = False

    def __post_init__(self):
        if not (self.forbid_two_cycle or self.forbid_two_path or self.require_distinguishing):
            raise ValueError("a constraint set must forbid or require something")

    @property
    def label(self) -> str:
        base = "1,2" if self.forbid_two_cycle and self.forbid_two_path else (
            "2" if self.forbid_two_path else "1"
        )
        return ("D" + base) if self.require_distinguishing else base

    def distinguishing(self) -> "ConstraintSet":
        return ConstraintSet(self.forbid_two_cycle, self.forbid_two_path, True)


TYPE1 = ConstraintSet(True, True, False)
TYPE2 = ConstraintSet(False, True, False)
TYPE1_D = TYPE1.distinguishing()
TYPE2_D = TYPE2.distinguishing()


# ---------------------------------------------------------------------------
# Vertex colouring
# ---------------------------------------------------------------------------


def dsatur_colouring(g: SimpleGraph) -> list[int]:
    """Greedy DSATUR vertex colouring with colours ``0, 1, ...``."""
    colour = [-1] * g.n
    seen: list[set[int]] = [set() for _ in range(g.n)]
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colour[u] < 0),
            key=lambda u: (len(seen[u]), g.degree(u), -u),
        )
        x = 0
        while x in seen[v]:
            x += 1
        colour[v] = x
        for u in g.adjacency[v]:
            seen[u].add(x)
    return colour


def _max_clique(g: SimpleGraph) -> int:
    nbr = [set(a) for a in g.adjacency]
    best = 0

    def expand(size, cand):
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + len(cand) <= best:
            return
        for v in sorted(cand):
            if size + len(cand) <= best:
                return
            expand(size + 1, cand & nbr[v])
            cand = cand - {v}

    expand(0, set(range(g.n)))
    return best


def _colour_within(g: SimpleGraph, k: int) -> Optional[list[int]]:
    """Proper vertex colouring with at most ``k`` colours, or None."""
    n = g.n
    colour = [-1] * n
    counts = [[0] * k for _ in range(n)]

    def saturation(v):
        return sum(1 for x in counts[v] if x)

    def place(done, used):
        if done == n:
            return True
        v = max(
            (u for u in range(n) if colour[u] < 0),
            key=lambda u: (saturation(u), g.degree(u), -u),
        )
        for x in range(min(k, used + 1)):
            if counts[v][x]:
                continue
            colour[v] = x
            for u in g.adjacency[v]:
                counts[u][x] += 1
            if place(done + 1, max(used, x + 1)):
                return True
            for u in g.adjacency[v]:
                counts[u][x] -= 1
            colour[v] = -1
        return False

    return colour if place(0, 0) else None


def vertex_colouring(g: SimpleGraph, k: Optional[int] = None) -> Optional[list[int]]:
    """Optimal proper vertex colouring, or one with at most ``k`` colours."""
    if g.n > CHROMATIC_MAX_N:
        raise SizeLimitError(f"exact vertex colouring limited to n <= {CHROMATIC_MAX_N}")
    if g.n == 0:
        return []
    if k is not None:
        return _colour_within(g, k)
    upper = dsatur_colouring(g)
    hi = max(upper) + 1
    for t in range(max(1, _max_clique(g)), hi):
        found = _colour_within(g, t)
        if found is not None:
            return found
    return upper


def chromatic_number(g: SimpleGraph) -> int:
    col = vertex_colouring(g)
    return max(col) + 1 if col else 0


# ---------------------------------------------------------------------------
# Arc-colouring search
# ---------------------------------------------------------------------------


@dataclass
class SearchResult:
    status: str
    colouring: Optional[ArcColouring] = None
    nodes: int = 0


def bfs_arc_order(g: SimpleGraph) -> list[tuple[int, int]]:
    """Edges in BFS discovery order, the two arcs of each edge adjacent."""
    order = []
    seen_edge = set()
    seen = [False] * g.n
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        for v in queue:
            for u in g.adjacency[v]:
                e = (min(u, v), max(u, v))
                if e not in seen_edge:
                    seen_edge.add(e)
                    order.append((v, u))
                    order.append((u, v))
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return order


def _group_elements(g: SimpleGraph) -> list[tuple[int, ...]]:
    """Non-identity automorphisms of ``g`` used to prune partial colourings.

    The whole group when it is small; otherwise its generators together
    with every transposition of twin vertices.
    """
    plain = ArcColouring(g, 1, {a: 1 for a in g.arcs()})
    report = colour_automorphisms(plain)
    identity = tuple(range(g.n))
    if report.group_order <= GROUP_ENUMERATION_LIMIT:
        elements = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for p in frontier:
                for s in report.generators:
                    q = tuple(s[p[i]] for i in range(g.n))
                    if q not in elements:
                        elements.add(q)
                        nxt.append(q)
            frontier = nxt
        elements.discard(identity)
        return sorted(elements)
    extra = set(report.generators)
    nbr = [set(a) for a in g.adjacency]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if nbr[u] - {v} == nbr[v] - {u}:
                p = list(identity)
                p[u], p[v] = v, u
                extra.add(tuple(p))
    return sorted(extra)


class _ArcSearch:
    def __init__(self, g, k, cs, budget, rng, prune=True):
        self.g = g
        self.k = k
        self.cs = cs
        self.budget = budget
        self.rng = rng
        self.nodes = 0
        self.order = bfs_arc_order(g)
        self.index = {a: i for i, a in enumerate(self.order)}
        A = len(self.order)
        conflicts: list[set[int]] = [set() for _ in range(A)]
        for (u, v), i in self.index.items():
            if cs.forbid_two_cycle:
                conflicts[i].add(self.index[(v, u)])
            if cs.forbid_two_path:
                for x in g.adjacency[u]:
                    if x != v:
                        conflicts[i].add(self.index[(x, u)])
                for w in g.adjacency[v]:
                    if w != u:
                        conflicts[i].add(self.index[(v, w)])
        self.conflicts = [sorted(s) for s in conflicts]
        self.colour = [0] * A
        self.blocked = [[0] * (k + 1) for _ in range(A)]
        self.free = [k] * A
        self.checks: list[list[tuple[list[int], list[int]]]] = [[] for _ in range(A)]
        if cs.require_distinguishing and prune:
            for p in _group_elements(g):
                moved, images = [], []
                for (u, v), i in self.index.items():
                    j = self.index[(p[u], p[v])]
                    if j != i:
                        moved.append(i)
                        images.append(j)
                if moved and max(moved) < A - 1:
                    self.checks[max(moved)].append((moved, images))
        self.result = None

    def run(self) -> SearchResult:
        try:
            ok = self._dfs(0, 0)
        except SearchBudgetExceeded:
            return SearchResult(BUDGET, None, self.nodes)
        if ok:
            return SearchResult(FOUND, self.result, self.nodes)
        return SearchResult(PROVEN, None, self.nodes)

    def _dfs(self, pos, used):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded("arc search budget exhausted", self.budget)
        if pos == len(self.order):
            return self._accept()
        blocked = self.blocked[pos]
        choices = [x for x in range(1, min(self.k, used + 1) + 1) if not blocked[x]]
        if self.rng is not None:
            self.rng.shuffle(choices)
        colour = self.colour
        for x in choices:
            colour[pos] = x
            touched = []
            ok = True
            for b in self.conflicts[pos]:
                if b > pos:
                    row = self.blocked[b]
                    row[x] += 1
                    touched.append(b)
                    if row[x] == 1:
                        self.free[b] -= 1
                        if self.free[b] == 0:
                            ok = False
                            break
            if ok:
                for moved, images in self.checks[pos]:
                    if all(colour[a] == colour[b] for a, b in zip(moved, images)):
                        ok = False
                        break
            if ok and self._dfs(pos + 1, max(used, x)):
                return True
            for b in touched:
                row = self.blocked[b]
                row[x] -= 1
                if row[x] == 0:
                    self.free[b] += 1
            colour[pos] = 0
        return False

    def _accept(self):
        c = ArcColouring(
            self.g, self.k, {a: self.colour[i] for a, i in self.index.items()}
        )
        if self.cs.require_distinguishing and not is_distinguishing(c):
            return False
        self.result = c
        return True


def _check_limits(g, k, cs, max_arcs):
    if k > MAX_K:
        raise SizeLimitError(f"arc search limited to k <= {MAX_K}")
    limit = max_arcs
    if limit is None:
        limit = MAX_ARCS_DISTINGUISHING if cs.require_distinguishing else MAX_ARCS
    if 2 * g.m > limit:
        raise SizeLimitError(f"arc search limited to {limit} arcs, graph has {2 * g.m}")
    if cs.require_distinguishing:
        require_connected(g)


def search(
    g: SimpleGraph,
    k: int,
    cs: ConstraintSet,
    node_budget: Optional[int] = None,
    rng: Optional[random.Random] = None,
    max_arcs: Optional[int] = None,
    prune: bool = True,
) -> SearchResult:
    """Backtracking search for a colouring with at most ``k`` colours.

    With ``prune`` a partial colouring is abandoned as soon as some graph
    automorphism touching only coloured arcs preserves it; switching it off
    leaves the distinguishing test to complete candidates alone.
    """
    _check_limits(g, k, cs, max_arcs)
    if k < 1:
        return SearchResult(PROVEN if g.m else FOUND, None if g.m else ArcColouring(g, 1, {}))
    budget = default_node_budget() if node_budget is None else node_budget
    return _ArcSearch(g, k, cs, budget, rng, prune).run()


def search_colouring(g, k, cs, node_budget=None, rng=None, max_arcs=None):
    """A colouring satisfying ``cs`` with at most ``k`` colours, or None if none exists.

    Raises :class:`SearchBudgetExceeded` rather than returning None when the
    search stops before proving impossibility.
    """
    res = search(g, k, cs, node_budget, rng, max_arcs)
    if res.status == BUDGET:
        raise SearchBudgetExceeded(
            f"search for a {k}-colouring exceeded its node budget", node_budget, res
        )
    return res.colouring


@dataclass
class IndexResult:
    k: int
    certificate: ArcColouring
    proof_status: str
    nodes: int = 0
    attempts: list = field(default_factory=list)


def solve_index(
    g: SimpleGraph,
    cs: ConstraintSet,
    node_budget: Optional[int] = None,
    max_arcs: Optional[int] = None,
    k_start: int = 1,
) -> IndexResult:
    """Least ``k`` admitting a colouring, every smaller ``k`` refuted exhaustively.

    ``k_start`` skips values the caller has already refuted; the default
    refutes everything from one colour upward.
    """
    attempts = []
    total = 0
    for k in range(max(1, k_start), MAX_K + 1):
        res = search(g, k, cs, node_budget, max_arcs=max_arcs)
        total += res.nodes
        attempts.append((k, res.status, res.nodes))
        if res.status == BUDGET:
            raise SearchBudgetExceeded(
                f"index search at k={k} exceeded its node budget", node_budget,
                IndexResult(k, None, BUDGET, total, attempts),
            )
        if res.status == FOUND:
            cert = res.colouring
            if not is_proper(cert, cs.forbid_two_cycle, cs.forbid_two_path):
                raise AssertionError("search certificate fails the pattern check")
            if cs.require_distinguishing and not is_distinguishing(cert):
                raise AssertionError("search certificate fails the distinguishing check")
            return IndexResult(k, cert, PROVEN, total, attempts)
    raise SizeLimitError(f"no colouring found with up to {MAX_K} colours")


def exact_index(g: SimpleGraph, cs: ConstraintSet, node_budget: Optional[int] = None,
                max_arcs: Optional[int] = None) -> int:
    return solve_index(g, cs, node_budget, max_arcs).k


def sample_colourings(g, k, cs, count, seed=0, node_budget=None, distinct=False, max_draws=None):
    """``count`` colourings found by searches with shuffled colour order.

    With ``distinct`` repeats are discarded; drawing stops after ``max_draws``
    searches (default ``20 * count``) even if fewer colourings were collected.
    """
    rng = random.Random(seed)
    out = []
    seen = set()
    draws = 0
    limit = 20 * count if max_draws is None else max_draws
    while len(out) < count and draws < limit:
        draws += 1
        c = search_colouring(g, k, cs, node_budget, rng=rng)
        if c is None:
            break
        key = tuple(sorted(c.colour.items()))
        if distinct and key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out


def csv_line(graph_id, cs, k, certificate_file, proof_status) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow([graph_id, cs.label, k, certificate_file, proof_status])
    return buf.getvalue()
