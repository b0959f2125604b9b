"""Input coercion for the estimator layer.

Graphs may arrive as :class:`SimpleGraph`, networkx graphs, square 0/1
adjacency matrices, or ``(n, edges)`` pairs.
"""

from __future__ import annotations

import numpy as np

from distinguo.graph import SimpleGraph
from distinguo.verify import ArcColouring


def check_graph(X) -> SimpleGraph:
    if isinstance(X, SimpleGraph):
        return X
    if hasattr(X, "number_of_nodes") and hasattr(X, "edges"):
        if X.is_directed() if hasattr(X, "is_directed") else False:
            raise ValueError("directed graphs are not accepted; pass the underlying graph")
        nodes = sorted(X.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return SimpleGraph.from_edges(len(nodes), ((index[u], index[v]) for u, v in X.edges()))
    if isinstance(X, tuple) and len(X) == 2 and isinstance(X[0], (int, np.integer)):
        n, edges = X
        return SimpleGraph.from_edges(int(n), edges)
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square adjacency matrix, got shape {A.shape}")
    if not np.isin(A, (0, 1)).all():
        raise ValueError("adjacency matrix entries must be 0 or 1")
    if (A != A.T).any():
        raise ValueError("adjacency matrix is not symmetric")
    if np.diag(A).any():
        raise ValueError("adjacency matrix has self-loops")
    us, vs = np.nonzero(np.triu(A, 1))
    return SimpleGraph.from_edges(A.shape[0], zip(us.tolist(), vs.tolist()))


def check_graphs(X) -> list[SimpleGraph]:
    """A batch of graphs; a single graph is wrapped into a batch of one."""
    if isinstance(X, SimpleGraph) or hasattr(X, "number_of_nodes"):
        return [check_graph(X)]
    if isinstance(X, np.ndarray) and X.ndim == 2:
        return [check_graph(X)]
    return [check_graph(x) for x in X]


def check_colourings(X) -> list[ArcColouring]:
    if isinstance(X, ArcColouring):
        return [X]
    out = list(X)
    for c in out:
        if not isinstance(c, ArcColouring):
            raise TypeError(f"expected ArcColouring, got {type(c).__name__}")
    return out
