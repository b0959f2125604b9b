"""Closed-form colour counts, all in exact integer arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

MAX_K = 64


def central_binomial(k: int) -> int:
    """``C(k, floor(k/2))``, the number of distinct half-size colour lists."""
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must lie in 1..{MAX_K}, got {k}")
    return comb(k, k // 2)


def min_k_threshold(t: int) -> int:
    """Smallest ``k`` with ``t <= C(k, floor(k/2))``.

    For ``t = chi(G)`` this is the least number of colours of a proper
    type-I arc-colouring of the symmetric digraph of ``G``.
    """
    if t < 1:
        raise ValueError("t must be positive")
    k = 1
    while central_binomial(k) < t:
        k += 1
    return k


def ceil_two_sqrt(delta: int) -> int:
    """``ceil(2*sqrt(delta))`` as the least ``k`` with ``k*k >= 4*delta``."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    k = isqrt(4 * delta)
    return k if k * k == 4 * delta else k + 1


@dataclass(frozen=True)
class ColourBudget:
    k: int

    @property
    def half_floor(self) -> int:
        return self.k // 2

    @property
    def half_ceil(self) -> int:
        return self.k - self.k // 2

    @property
    def pair_capacity(self) -> int:
        """Distinct (outgoing, ingoing) pairs at a vertex with a fixed list."""
        return self.half_ceil * self.half_floor

    @property
    def list_capacity(self) -> int:
        """Lists that contain one given colour and miss another."""
        return comb(self.k - 2, self.half_floor - 1) if self.k >= 2 else 0


def colour_budget(delta: int) -> ColourBudget:
    if delta < 1:
        raise ValueError("delta must be positive")
    return ColourBudget(ceil_two_sqrt(delta))


def list_inequality_holds(k: int) -> bool:
    """Whether ``C(k-2, floor(k/2)-1) >= k*k/4 + 1``, compared as integers."""
    if k < 3:
        raise ValueError("k must be at least 3")
    return 4 * comb(k - 2, k // 2 - 1) >= k * k + 4
