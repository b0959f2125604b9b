import itertools

import pytest

from distinguo.verify import ArcColouring, find_monochromatic, preserves


def brute_force_colourings(g, k, forbid_two_cycle=True, forbid_two_path=True):
    """Every arc-colouring with colours 1..k avoiding the chosen patterns."""
    arcs = list(g.arcs())
    for cols in itertools.product(range(1, k + 1), repeat=len(arcs)):
        c = ArcColouring(g, k, dict(zip(arcs, cols)))
        if forbid_two_cycle and find_monochromatic(c, "two_cycle"):
            continue
        if forbid_two_path and find_monochromatic(c, "two_path"):
            continue
        yield c


def brute_force_group_order(c):
    n = c.graph.n
    return sum(1 for p in itertools.permutations(range(n)) if preserves(c, p))


def brute_force_index(g, forbid_two_cycle=True, forbid_two_path=True, distinguishing=False, k_max=4):
    for k in range(1, k_max + 1):
        for c in brute_force_colourings(g, k, forbid_two_cycle, forbid_two_path):
            if not distinguishing or brute_force_group_order(c) == 1:
                return k
    return None


@pytest.fixture
def rng():
    import random

    return random.Random(20261014)
