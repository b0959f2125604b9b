"""Arc-colouring constructions.

The central routine, :func:`colour_distinguishing_type1`, colours the
symmetric digraph of a connected graph with ``ceil(2*sqrt(Delta))``
colours so that no 2-cycle or 2-path is monochromatic and only the
identity preserves the colouring.  Every vertex ``x`` receives a list
``L(x)`` of ``floor(k/2)`` admissible ingoing colours, adjacent vertices
get different lists, and each arc ``u -> v`` takes a colour from
``L(v) - L(u)``.  A root of maximum degree is pinned by a star of
pairwise distinct colour pairs, and the remaining vertices are listed
group by group along a BFS order, each group being fixed by the colours
towards its already listed (hence already fixed) neighbours.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

from distinguo import oracle
from distinguo.bounds import ceil_two_sqrt, colour_budget, min_k_threshold
from distinguo.exceptions import ConstructionError, SizeLimitError
from distinguo.graph import SimpleGraph, bfs_tree, generate_family, require_connected
from distinguo.verify import ArcColouring, is_distinguishing, is_proper

log = logging.getLogger(__name__)

GROUP_SEARCH_BUDGET = 200_000
GLOBAL_SEARCH_MAX_ARCS = 160
GLOBAL_SEARCH_BUDGET = 2_000_000


@dataclass
class ListAssignment:
    k: int
    lists: dict = field(default_factory=dict)

    def __contains__(self, v):
        return v in self.lists

    def __getitem__(self, v):
        return self.lists[v]

    def __setitem__(self, v, value):
        value = frozenset(value)
        if len(value) != self.k // 2:
            raise ValueError(f"list {sorted(value)} does not have {self.k // 2} colours")
        self.lists[v] = value


@dataclass(frozen=True)
class SiblingGroup:
    parent: int
    members: tuple
    listed_neighbourhood: frozenset


@dataclass(frozen=True)
class GroupTrace:
    parent: int
    size: int
    strategy: str

    def line(self) -> str:
        return f"{self.parent + 1} {self.size} {self.strategy}"


@dataclass
class Construction:
    """A colouring together with the lists and per-group trace that built it."""

    colouring: ArcColouring
    lists: Optional[ListAssignment]
    trace: list


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def _half_lists(k: int):
    """All ``floor(k/2)``-subsets of ``1..k`` in lexicographic order."""
    return [frozenset(s) for s in itertools.combinations(range(1, k + 1), k // 2)]


def _star_rule_colouring(g: SimpleGraph, lists: dict, k: int) -> ArcColouring:
    colour = {}
    for u, v in g.arcs():
        colour[(u, v)] = min(lists[v] - lists[u])
    return ArcColouring(g, k, colour)


def _path_colouring(n: int) -> ArcColouring:
    g = generate_family("path", n)
    colour = {}
    for i in range(n - 1):
        fwd = 1 if i % 2 == 0 else 2
        colour[(i, i + 1)] = fwd
        colour[(i + 1, i)] = 3 - fwd
    k = 2
    if n % 2 == 1:
        colour[(0, 1)] = 3
        k = 3
    return ArcColouring(g, k, colour)


def _cycle_colouring(n: int) -> ArcColouring:
    g = generate_family("cycle", n)
    colour = {}
    if n % 2 == 0:
        for i in range(n):
            fwd = 1 if i % 2 == 0 else 2
            colour[(i, (i + 1) % n)] = fwd
            colour[((i + 1) % n, i)] = 3 - fwd
        colour[(0, 1)] = 3
        return ArcColouring(g, 3, colour)
    # odd: only the two arcs entering vertex 0 carry the third colour
    for i in range(n - 1):
        fwd = 1 if i % 2 == 0 else 2
        colour[(i, i + 1)] = fwd
        colour[(i + 1, i)] = 3 - fwd
    colour[(1, 0)] = 3
    colour[(n - 1, 0)] = 3
    colour[(0, n - 1)] = 2
    return ArcColouring(g, 3, colour)


def _star_colouring(delta: int) -> ArcColouring:
    g = generate_family("star", delta)
    k = ceil_two_sqrt(delta)
    hc = k - k // 2
    pairs = [(a, b) for a in range(1, hc + 1) for b in range(hc + 1, k + 1)]
    colour = {}
    for leaf, (a, b) in zip(range(1, delta + 1), pairs):
        colour[(0, leaf)] = a
        colour[(leaf, 0)] = b
    return ArcColouring(g, k, colour)


def _complete_colouring(n: int) -> ArcColouring:
    g = generate_family("complete", n)
    k = min_k_threshold(n)
    lists = dict(enumerate(_half_lists(k)[:n]))
    return _star_rule_colouring(g, lists, k)


def colour_family_distinguishing(kind: str, param: int) -> ArcColouring:
    """Distinguishing type-I colouring of a canonically labelled family member."""
    if kind == "path":
        if param < 2:
            raise ValueError("path needs n >= 2")
        return _path_colouring(param)
    if kind == "cycle":
        if param < 3:
            raise ValueError("cycle needs n >= 3")
        return _cycle_colouring(param)
    if kind == "star":
        if param < 1:
            raise ValueError("star needs at least one leaf")
        return _star_colouring(param)
    if kind == "complete":
        if param < 2:
            raise ValueError("complete graph needs n >= 2")
        return _complete_colouring(param)
    raise ValueError(f"no family colouring for {kind!r}")


def _walk(g: SimpleGraph) -> tuple[str, list[int]]:
    """Classify a connected graph with max degree <= 2 and list it in walk order."""
    ends = [v for v in range(g.n) if g.degree(v) == 1]
    kind = "path" if ends else "cycle"
    start = ends[0] if ends else 0
    order = [start]
    prev = None
    cur = start
    while len(order) < g.n:
        nxt = min(u for u in g.adjacency[cur] if u != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return kind, order


def _relabelled(c: ArcColouring, g: SimpleGraph, walk: list[int]) -> ArcColouring:
    colour = {(walk[u], walk[v]): x for (u, v), x in c.colour.items()}
    return ArcColouring(g, c.k, colour)


# ---------------------------------------------------------------------------
# Minimum type-I colouring from a vertex colouring
# ---------------------------------------------------------------------------


def colour_type1_minimum(g: SimpleGraph, chi: Optional[int] = None) -> ArcColouring:
    """Proper type-I colouring with ``min{k : chi <= C(k, floor(k/2))}`` colours.

    Each vertex colour class gets its own ``floor(k/2)``-subset as list
    and arc ``u -> v`` takes the smallest colour of ``L(v) - L(u)``.  When
    ``chi`` is omitted it is computed exactly for ``n <= 16`` and bounded
    by DSATUR above that.
    """
    require_connected(g)
    if g.n < 2:
        raise ValueError("need at least two vertices")
    if g.n <= oracle.CHROMATIC_MAX_N:
        vc = oracle.vertex_colouring(g, chi)
        if vc is None:
            raise ValueError(f"graph has no proper vertex colouring with {chi} colours")
    else:
        vc = oracle.dsatur_colouring(g)
        if chi is None:
            log.warning("n=%d: chromatic number bounded by DSATUR; k is an upper bound", g.n)
        elif max(vc) + 1 > chi:
            raise ValueError(f"DSATUR needs {max(vc) + 1} colours, more than chi={chi}")
    classes = max(vc) + 1
    k = min_k_threshold(chi if chi is not None else classes)
    rank: dict[int, int] = {}
    for v in range(g.n):
        rank.setdefault(vc[v], len(rank))
    subsets = _half_lists(k)
    lists = {v: subsets[rank[vc[v]]] for v in range(g.n)}
    return _star_rule_colouring(g, lists, k)


# ---------------------------------------------------------------------------
# Distinguishing type-I colouring within ceil(2 sqrt(Delta))
# ---------------------------------------------------------------------------


class _GroupFailed(Exception):
    pass


class _ListBuilder:
    def __init__(self, g: SimpleGraph, group_budget: int):
        self.g = g
        self.delta = g.max_degree
        self.k = colour_budget(self.delta).k
        self.h = self.k // 2
        self.hc = self.k - self.h
        self.all_lists = _half_lists(self.k)
        self.lists = ListAssignment(self.k)
        self.colour: dict = {}
        self.trace: list[GroupTrace] = []
        self.group_budget = group_budget

    # -- helpers -----------------------------------------------------------

    def listed_neighbours(self, u):
        return frozenset(x for x in self.g.adjacency[u] if x in self.lists)

    def star_colour(self, u, others):
        """Colour every uncoloured arc between ``u`` and listed ``others`` by the list rule."""
        L = self.lists.lists
        for x in others:
            if (u, x) not in self.colour:
                self.colour[(u, x)] = min(L[x] - L[u])
                self.colour[(x, u)] = min(L[u] - L[x])

    def parent_pairs(self, v):
        """All ``(out, in)`` colour pairs for a child of ``v``, lexicographically."""
        Lv = self.lists[v]
        return [(a, b) for a in range(1, self.k + 1) if a not in Lv for b in sorted(Lv)]

    # -- root --------------------------------------------------------------

    def colour_root(self):
        g = self.g
        w = min(v for v in range(g.n) if g.degree(v) == self.delta)
        self.root = w
        self.root_list = frozenset(range(self.hc + 1, self.k + 1))
        self.lists[w] = self.root_list
        pairs = [(a, b) for a in range(1, self.hc + 1) for b in sorted(self.root_list)]
        for u, (a, b) in zip(g.adjacency[w], pairs):
            self.colour[(w, u)] = a
            self.colour[(u, w)] = b
            self.lists[u] = (self.root_list - {b}) | {a}
        for u in g.adjacency[w]:
            self.star_colour(u, self.listed_neighbours(u))
        self.trace.append(GroupTrace(w, g.degree(w), "root-star"))

    # -- sibling groups ----------------------------------------------------

    def next_group(self, v, tree):
        unlisted = [u for u in self.g.adjacency[v] if u not in self.lists]
        if not unlisted:
            return None
        for u in unlisted:
            if tree.parent.get(u) != v:
                raise AssertionError(f"unlisted neighbour {u} of {v} is not its child")

        def key(u):
            return (self.g.degree(u), self.listed_neighbours(u))

        first = key(unlisted[0])
        members = tuple(u for u in unlisted if key(u) == first)
        return SiblingGroup(v, members, first[1])

    def candidate_lists(self, u, group, assigned, allow_root):
        g = self.g
        banned = {self.lists[x] for x in group.listed_neighbourhood}
        banned.update(assigned[y] for y in g.adjacency[u] if y in assigned)
        if not allow_root:
            banned.add(self.root_list)
        return [L for L in self.all_lists if L not in banned]

    def greedy(self, group):
        """Distinct parent pairs; smallest compatible list per child."""
        v = group.parent
        used = set()
        assigned = {}
        pairs_chosen = {}
        repaired = False
        for u in group.members:
            options = self.candidate_lists(u, group, assigned, allow_root=False)
            for idx, (a, b) in enumerate(p for p in self.parent_pairs(v) if p not in used):
                fit = next((L for L in options if a in L and b not in L), None)
                if fit is not None:
                    repaired |= idx > 0
                    used.add((a, b))
                    assigned[u] = fit
                    pairs_chosen[u] = (a, b)
                    break
            else:
                return None
        return assigned, pairs_chosen, ("repair" if repaired else "greedy")

    def local_search(self, group, allow_root):
        """Backtrack over lists and colours towards the listed neighbourhood.

        Members of the group are pinned when their colour pairs towards the
        common listed neighbourhood, read as one vector, are pairwise
        distinct.
        """
        members = group.members
        nl = sorted(group.listed_neighbourhood)
        L = self.lists.lists
        assigned: dict = {}
        vectors: dict = {}
        nodes = 0

        def options(u, Lu):
            spaces = [[(a, b) for a in sorted(Lu - L[x]) for b in sorted(L[x] - Lu)] for x in nl]
            return itertools.islice(itertools.product(*spaces), len(members))

        def place(i):
            nonlocal nodes
            if i == len(members):
                return True
            u = members[i]
            taken = set(vectors.values())
            for Lu in self.candidate_lists(u, group, assigned, allow_root):
                nodes += 1
                if nodes > self.group_budget:
                    raise _GroupFailed("group search budget exhausted")
                for vec in options(u, Lu):
                    if vec in taken:
                        continue
                    assigned[u] = Lu
                    vectors[u] = vec
                    if place(i + 1):
                        return True
                    del assigned[u], vectors[u]
            return False

        if not place(0):
            return None
        return assigned, vectors, nl

    def process(self, group):
        found = self.greedy(group)
        if found is not None:
            assigned, pairs, strategy = found
            v = group.parent
            for u in group.members:
                a, b = pairs[u]
                self.colour[(v, u)] = a
                self.colour[(u, v)] = b
                self.lists[u] = assigned[u]
        else:
            result = None
            strategy = "search"
            for allow_root in (False, True):
                try:
                    result = self.local_search(group, allow_root)
                except _GroupFailed:
                    result = None
                if result is not None:
                    strategy = "search-root-list" if allow_root else "search"
                    break
            if result is None:
                raise _GroupFailed(f"no lists for sibling group under parent {group.parent}")
            assigned, vectors, nl = result
            for u in group.members:
                self.lists[u] = assigned[u]
                for x, (a, b) in zip(nl, vectors[u]):
                    self.colour[(x, u)] = a
                    self.colour[(u, x)] = b
        for u in group.members:
            self.star_colour(u, self.listed_neighbours(u))
        self.trace.append(GroupTrace(group.parent, len(group.members), strategy))

    def run(self) -> Construction:
        self.colour_root()
        tree = bfs_tree(self.g, self.root)
        for v in tree.order:
            while True:
                group = self.next_group(v, tree)
                if group is None:
                    break
                self.process(group)
        c = ArcColouring(self.g, self.k, self.colour)
        return Construction(c, self.lists, self.trace)


def _accepts(c: ArcColouring) -> bool:
    return is_proper(c) and bool(is_distinguishing(c))


def construct_distinguishing_type1(
    g: SimpleGraph, group_budget: int = GROUP_SEARCH_BUDGET, node_budget: Optional[int] = None
) -> Construction:
    """Build a distinguishing type-I colouring and report how each group was handled."""
    require_connected(g)
    if g.n < 2:
        raise ValueError("need at least two vertices")
    if g.max_degree <= 2:
        kind, walk = _walk(g)
        fam = colour_family_distinguishing(kind, g.n)
        c = _relabelled(fam, g, walk)
        return Construction(c, None, [GroupTrace(walk[0], g.n, f"family-{kind}")])
    builder = _ListBuilder(g, group_budget)
    trace = builder.trace
    try:
        built = builder.run()
        if _accepts(built.colouring):
            return built
        trace.append(GroupTrace(builder.root, g.n, "verify-failed"))
    except _GroupFailed as exc:
        log.info("list construction stalled: %s", exc)
        trace.append(GroupTrace(builder.root, g.n, "group-exhausted"))
    k = builder.k
    if 2 * g.m > GLOBAL_SEARCH_MAX_ARCS:
        raise ConstructionError(
            f"no distinguishing colouring with {k} colours found and the graph is too "
            f"large ({2 * g.m} arcs) for whole-colouring search",
            trace,
        )
    try:
        res = oracle.search(
            g, k, oracle.TYPE1_D,
            node_budget=GLOBAL_SEARCH_BUDGET if node_budget is None else node_budget,
            max_arcs=GLOBAL_SEARCH_MAX_ARCS,
        )
    except SizeLimitError as exc:
        raise ConstructionError(str(exc), trace) from exc
    if res.colouring is None:
        raise ConstructionError(f"whole-colouring search ended with status {res.status}", trace)
    trace.append(GroupTrace(builder.root, g.n, "global-search"))
    return Construction(res.colouring, None, trace)


def colour_distinguishing_type1(g: SimpleGraph) -> ArcColouring:
    """Distinguishing proper type-I colouring with at most ``ceil(2*sqrt(Delta))`` colours."""
    return construct_distinguishing_type1(g).colouring


# ---------------------------------------------------------------------------
# Complete graphs, 2-paths forbidden only
# ---------------------------------------------------------------------------


def _far_lists(k: int, q: int, paired: int):
    """``q`` distinct lists; each of the first ``paired`` shares at most ``k//2 - 2``
    colours with some other chosen list. Lists without such a partner go last."""
    h = k // 2
    pool = _half_lists(k)

    def far(a, b):
        return len(a & b) <= h - 2

    chosen = []
    for s in pool:
        if len(chosen) >= q:
            break
        if s in chosen:
            continue
        chosen.append(s)
        if len(chosen) < q and not any(far(s, t) for t in chosen):
            partner = next((t for t in pool if t not in chosen and far(s, t)), None)
            if partner is not None:
                chosen.append(partner)
    lonely = [s for s in chosen if not any(far(s, t) for t in chosen)]
    if len(lonely) > q - paired:
        raise ConstructionError(
            f"{q} lists over {k} colours leave {len(lonely)} pairs without a recolouring partner"
        )
    return [s for s in chosen if s not in lonely] + lonely


def _paired_complete(n: int, far_lists: bool = False):
    """Pair vertices ``(2i, 2i+1)``; returns quotient lists and the quotient colouring."""
    q = (n + 1) // 2
    kq = min_k_threshold(q)
    lists = dict(enumerate(_far_lists(kq, q, n // 2) if far_lists else _half_lists(kq)[:q]))
    quotient = {}
    for i in range(q):
        for j in range(q):
            if i != j:
                quotient[(i, j)] = min(lists[j] - lists[i])
    return q, kq, lists, quotient


def _blow_up(n, kq, quotient):
    g = generate_family("complete", n)
    colour = {}
    for u, v in g.arcs():
        i, j = u // 2, v // 2
        colour[(u, v)] = 1 if i == j else quotient[(i, j)] + 1
    return g, colour


def colour_type2_complete(n: int) -> ArcColouring:
    """Colouring of the complete symmetric digraph with no monochromatic 2-path.

    Vertex pairs share one reserved colour on their two arcs; the quotient
    complete graph on the pairs is coloured properly of type I and every
    arc between two pairs inherits its quotient colour.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    _, kq, _, quotient = _paired_complete(n)
    g, colour = _blow_up(n, kq, quotient)
    return ArcColouring(g, kq + 1, colour)


def colour_distinguishing_type2_complete(n: int) -> ArcColouring:
    """Distinguishing version: one arc into each pair's first vertex is recoloured.

    For pair ``i`` the smallest ``j`` is chosen whose list leaves a colour
    ``alpha`` of ``L(i)`` outside ``L(j)`` and different from the quotient
    colour of ``j -> i``; arc ``u_j -> u_i`` then takes ``alpha`` so that
    ``u_i`` and ``v_i`` see different ingoing colours.

    The quotient lists are chosen so that every pair has such a partner.
    For ``n = 10`` no family of five lists over four colours allows this and
    :class:`ConstructionError` is raised.
    """
    if n < 7:
        raise ValueError("need n >= 7")
    q, kq, lists, quotient = _paired_complete(n, far_lists=True)
    g, colour = _blow_up(n, kq, quotient)
    for i in range(n // 2):
        for j in range(q):
            if j == i:
                continue
            spare = lists[i] - lists[j] - {quotient[(j, i)]}
            if spare:
                colour[(2 * j, 2 * i)] = min(spare) + 1
                break
        else:
            raise ConstructionError(f"no recolouring partner for pair {i}")
    return ArcColouring(g, kq + 1, colour)
