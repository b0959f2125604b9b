"""Graphviz DOT rendering of a symmetric digraph and optional colouring."""

from __future__ import annotations

from typing import Optional

from distinguo.graph import SimpleGraph
from distinguo.verify import ArcColouring

PALETTE = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
    "#ff7f00", "#a65628", "#f781bf", "#999999",
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
    "#a6d854", "#ffd92f", "#1b9e77", "#000000",
)


def dot_emit(
    g: SimpleGraph,
    c: Optional[ArcColouring] = None,
    highlight: Optional[int] = None,
    name: str = "G",
) -> str:
    """One ``u -> v`` statement per arc, vertices numbered from 1.

    With ``highlight`` only arcs of that colour are written.
    """
    if c is not None and c.k > len(PALETTE):
        raise ValueError(f"palette holds {len(PALETTE)} colours, colouring uses k={c.k}")
    if highlight is not None and c is None:
        raise ValueError("highlight needs a colouring")
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    lines.extend(f"  {v + 1};" for v in range(g.n))
    for u, v in g.arcs():
        if c is None:
            lines.append(f"  {u + 1} -> {v + 1};")
            continue
        x = c.colour[(u, v)]
        if highlight is not None and x != highlight:
            continue
        lines.append(f'  {u + 1} -> {v + 1} [color="{PALETTE[x - 1]}", label="{x}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
