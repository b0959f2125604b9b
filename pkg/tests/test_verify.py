import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_group_order
from distinguo.construct import colour_family_distinguishing
from distinguo.exceptions import DisconnectedGraphError, GraphFormatError, SearchBudgetExceeded
from distinguo.graph import SimpleGraph, connected_graphs, generate_family, petersen_graph
from distinguo.verify import (
    ArcColouring,
    colour_automorphisms,
    emit_colouring,
    find_monochromatic,
    fixed_vertices,
    is_distinguishing,
    parse_colouring,
    preserves,
)


def uniform(g, x=1):
    return ArcColouring(g, x, {a: x for a in g.arcs()})


def two_colour_path(n):
    g = generate_family("path", n)
    col = {}
    for i in range(n - 1):
        col[(i, i + 1)] = 1 + i % 2
        col[(i + 1, i)] = 2 - i % 2
    return ArcColouring(g, 2, col)


def two_colour_cycle(n):
    g = generate_family("cycle", n)
    col = {}
    for i in range(n):
        col[(i, (i + 1) % n)] = 1 + i % 2
        col[((i + 1) % n, i)] = 2 - i % 2
    return ArcColouring(g, 2, col)


def test_arc_colouring_validation():
    g = generate_family("path", 2)
    with pytest.raises(ValueError):
        ArcColouring(g, 1, {(0, 1): 1})
    with pytest.raises(ValueError):
        ArcColouring(g, 1, {(0, 1): 1, (1, 0): 2})
    with pytest.raises(ValueError):
        ArcColouring(g, 2, {(0, 1): 1, (1, 0): 2, (0, 2): 1})


def test_monochromatic_p3():
    c = uniform(generate_family("path", 3))
    assert find_monochromatic(c, "two_path") == [(0, 1, 2), (2, 1, 0)]


def test_monochromatic_k2():
    c = uniform(generate_family("path", 2))
    assert find_monochromatic(c, "two_cycle") == [(0, 1)]
    assert find_monochromatic(c, "two_path") == []


def test_star_scheme_has_no_patterns():
    c = colour_family_distinguishing("star", 4)
    assert find_monochromatic(c, "two_cycle") == []
    assert find_monochromatic(c, "two_path") == []


def test_unknown_pattern():
    with pytest.raises(ValueError):
        find_monochromatic(uniform(generate_family("path", 2)), "sink")


def test_witnesses_recheck_by_definition():
    rng = random.Random(3)
    for g in connected_graphs(5):
        arcs = list(g.arcs())
        c = ArcColouring(g, 2, {a: rng.randint(1, 2) for a in arcs})
        for u, v, w in find_monochromatic(c, "two_path"):
            assert u != w and c[(u, v)] == c[(v, w)]
        for u, v in find_monochromatic(c, "two_cycle"):
            assert c[(u, v)] == c[(v, u)]
        count = sum(
            1 for (u, v) in arcs for w in g.adjacency[v] if w != u and c[(u, v)] == c[(v, w)]
        )
        assert count == len(find_monochromatic(c, "two_path"))


def test_k3_monochromatic_group():
    r = colour_automorphisms(uniform(generate_family("complete", 3)))
    assert r.group_order == 6 and r.fixed == frozenset()
    assert r.orbits == [(0, 1, 2)]


def test_c4_two_colouring_not_distinguishing():
    c = two_colour_cycle(4)
    assert colour_automorphisms(c).group_order >= 2
    assert not is_distinguishing(c)


def test_p4_two_colouring_distinguishing():
    c = two_colour_path(4)
    assert colour_automorphisms(c).group_order == 1
    assert is_distinguishing(c)


def test_c6_two_colouring_witness():
    c = two_colour_cycle(6)
    v = is_distinguishing(c)
    assert not v.distinguishing
    assert preserves(c, v.witness) and v.witness != tuple(range(6))


def test_k2_transposition_witness():
    v = is_distinguishing(uniform(generate_family("path", 2)))
    assert not v.distinguishing and v.witness == (1, 0)


def proper_type1_colourings(g, k):
    arcs = list(g.arcs())
    col = {}

    def clash(u, v, x):
        if col.get((v, u)) == x:
            return True
        return any(col.get((v, w)) == x for w in g.adjacency[v] if w != u) or any(
            col.get((t, u)) == x for t in g.adjacency[u] if t != v
        )

    def rec(i):
        if i == len(arcs):
            yield ArcColouring(g, k, dict(col))
            return
        u, v = arcs[i]
        for x in range(1, k + 1):
            if not clash(u, v, x):
                col[(u, v)] = x
                yield from rec(i + 1)
                del col[(u, v)]

    return rec(0)


def test_every_proper_k4_four_colouring_distinguishing():
    g = generate_family("complete", 4)
    total = 0
    for c in proper_type1_colourings(g, 4):
        assert is_distinguishing(c)
        assert brute_force_group_order(c) == 1
        total += 1
    assert total == 2736


def test_disconnected_rejected():
    g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        colour_automorphisms(uniform(g))


def test_group_orders_of_known_graphs():
    assert colour_automorphisms(uniform(petersen_graph())).group_order == 120
    assert colour_automorphisms(uniform(generate_family("complete_bipartite", 4, 4))).group_order == 1152
    assert colour_automorphisms(uniform(generate_family("complete", 11))).group_order == 39916800
    assert colour_automorphisms(uniform(generate_family("cycle", 9))).group_order == 18


def test_generators_preserve_and_orbits_consistent():
    c = two_colour_cycle(8)
    r = colour_automorphisms(c)
    for p in r.generators:
        assert preserves(c, p) and p != tuple(range(8))
    orbit_of = {v: o for o in r.orbits for v in o}
    for p in r.generators:
        for v in range(8):
            assert p[v] in orbit_of[v]


def test_fixed_vertices_odd_path_family():
    c = colour_family_distinguishing("path", 5)
    assert fixed_vertices(c) == frozenset(range(5))


def test_budget_exceeded_flags_partial():
    with pytest.raises(SearchBudgetExceeded) as err:
        colour_automorphisms(uniform(generate_family("complete", 8)), node_budget=5)
    assert err.value.partial.order_is_lower_bound


def random_colouring(g, k, rng):
    return ArcColouring(g, k, {a: rng.randint(1, k) for a in g.arcs()})


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_refinement_matches_exhaustive_sweep(n):
    rng = random.Random(n)
    for g in connected_graphs(n):
        for k in (1, 2, 3):
            c = random_colouring(g, k, rng)
            fast = colour_automorphisms(c)
            slow = colour_automorphisms(c, method="exhaustive")
            assert fast.group_order == slow.group_order
            assert fast.orbits == slow.orbits


def test_exhaustive_matches_definition():
    rng = random.Random(11)
    for g in connected_graphs(4):
        c = random_colouring(g, 2, rng)
        assert colour_automorphisms(c, "exhaustive").group_order == brute_force_group_order(c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(7, 8))
def test_refinement_matches_sweep_seven_eight(seed, n):
    rng = random.Random(seed)
    from distinguo.graph import random_connected_graph

    g = random_connected_graph(n, rng.choice([0.2, 0.5, 0.9]), rng)
    c = random_colouring(g, rng.randint(1, 3), rng)
    assert colour_automorphisms(c).group_order == colour_automorphisms(c, "exhaustive").group_order


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_verdict_invariant_under_colour_renaming(seed):
    rng = random.Random(seed)
    g = rng.choice(connected_graphs(5))
    c = random_colouring(g, 3, rng)
    names = [1, 2, 3, 4, 5]
    rng.shuffle(names)
    renamed = c.renamed({1: names[0], 2: names[1], 3: names[2]})
    assert is_distinguishing(c).distinguishing == is_distinguishing(renamed).distinguishing
    assert colour_automorphisms(c).group_order == colour_automorphisms(renamed).group_order


def test_recolouring_steps_never_grow_group():
    even = two_colour_cycle(6)
    fixed = even.recoloured({(0, 1): 3}, k=3)
    assert colour_automorphisms(fixed).group_order <= colour_automorphisms(even).group_order
    assert colour_automorphisms(fixed).group_order == 1
    odd = two_colour_path(5)
    third = odd.recoloured({(0, 1): 3}, k=3)
    assert colour_automorphisms(odd).group_order == 2
    assert colour_automorphisms(third).group_order == 1


def test_colouring_file_roundtrip():
    c = colour_family_distinguishing("star", 6)
    text = emit_colouring(c)
    assert text.splitlines()[0] == "c 7 5"
    again = parse_colouring(text)
    assert again.graph == c.graph and again.colour == c.colour and again.k == c.k


@pytest.mark.parametrize(
    "text",
    [
        "a 1 2 1\n",
        "c 2 1\na 1 2 1\n",
        "c 2 1\na 1 2 2\na 2 1 1\n",
        "c 2 1\na 1 3 1\na 3 1 1\n",
        "c 2 1\na 1 2 1\na 1 2 1\na 2 1 1\n",
        "c 2 1\nz 1\n",
    ],
)
def test_colouring_file_errors(text):
    with pytest.raises(GraphFormatError):
        parse_colouring(text)
