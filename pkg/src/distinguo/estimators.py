"""scikit-learn style wrappers; each graph in ``X`` is one sample.

>>> from distinguo import ArcColourer, generate_family
>>> [c.k for c in ArcColourer().fit_transform([generate_family("star", 9)])]
[6]
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from distinguo import construct, oracle
from distinguo.validation import check_colourings, check_graphs
from distinguo.verify import is_distinguishing, is_proper

ALGORITHMS = ("thm4", "min")


class ArcColourer(TransformerMixin, BaseEstimator):
    """Colour each input graph's symmetric digraph.

    Parameters
    ----------
    algo : {"thm4", "min"}
        ``"thm4"`` gives a distinguishing type-I colouring within
        ``ceil(2*sqrt(Delta))`` colours; ``"min"`` the least-colour type-I
        colouring from a vertex colouring.
    chi : int, optional
        Chromatic number handed to ``"min"``.
    group_budget : int
        Node budget of the per-group list search used by ``"thm4"``.
    """

    def __init__(self, algo="thm4", chi=None, group_budget=construct.GROUP_SEARCH_BUDGET):
        self.algo = algo
        self.chi = chi
        self.group_budget = group_budget

    def fit(self, X=None, y=None):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"algo must be one of {ALGORITHMS}, got {self.algo!r}")
        self.is_fitted_ = True
        return self

    def transform(self, X):
        graphs = check_graphs(X)
        self.traces_ = []
        out = []
        for g in graphs:
            if self.algo == "min":
                out.append(construct.colour_type1_minimum(g, self.chi))
                self.traces_.append([])
            else:
                built = construct.construct_distinguishing_type1(g, self.group_budget)
                out.append(built.colouring)
                self.traces_.append(built.trace)
        return out


class ColouringVerifier(BaseEstimator):
    """Predict whether colourings are proper (and, optionally, distinguishing)."""

    def __init__(self, forbid_two_cycle=True, forbid_two_path=True, distinguishing=True,
                 node_budget=None):
        self.forbid_two_cycle = forbid_two_cycle
        self.forbid_two_path = forbid_two_path
        self.distinguishing = distinguishing
        self.node_budget = node_budget

    def fit(self, X=None, y=None):
        return self

    def predict(self, X):
        verdicts = []
        for c in check_colourings(X):
            ok = is_proper(c, self.forbid_two_cycle, self.forbid_two_path)
            if ok and self.distinguishing:
                ok = is_distinguishing(c, self.node_budget).distinguishing
            verdicts.append(ok)
        return np.array(verdicts, dtype=bool)

    def score(self, X, y=None):
        """Fraction of colourings accepted."""
        pred = self.predict(X)
        if y is None:
            return float(pred.mean()) if len(pred) else 1.0
        return float((pred == np.asarray(y, dtype=bool)).mean())


class ChromaticIndexOracle(BaseEstimator):
    """Exact arc-chromatic indices by exhaustive search, one per graph."""

    def __init__(self, forbid_two_cycle=True, forbid_two_path=True, distinguishing=False,
                 node_budget=None, max_arcs=None):
        self.forbid_two_cycle = forbid_two_cycle
        self.forbid_two_path = forbid_two_path
        self.distinguishing = distinguishing
        self.node_budget = node_budget
        self.max_arcs = max_arcs

    def fit(self, X=None, y=None):
        self.constraints_ = oracle.ConstraintSet(
            self.forbid_two_cycle, self.forbid_two_path, self.distinguishing
        )
        return self

    def predict(self, X):
        if not hasattr(self, "constraints_"):
            self.fit()
        self.certificates_ = []
        ks = []
        for g in check_graphs(X):
            res = oracle.solve_index(g, self.constraints_, self.node_budget, self.max_arcs)
            ks.append(res.k)
            self.certificates_.append(res.certificate)
        return np.array(ks, dtype=int)
