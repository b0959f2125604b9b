"""Proper and distinguishing arc-colourings of symmetric digraphs."""

from distinguo.bounds import (
    ColourBudget,
    central_binomial,
    colour_budget,
    list_inequality_holds,
    min_k_threshold,
)
from distinguo.construct import (
    colour_distinguishing_type1,
    colour_distinguishing_type2_complete,
    colour_family_distinguishing,
    colour_type1_minimum,
    colour_type2_complete,
    construct_distinguishing_type1,
)
from distinguo.estimators import ArcColourer, ChromaticIndexOracle, ColouringVerifier
from distinguo.graph import (
    BfsTree,
    SimpleGraph,
    bfs_tree,
    generate_family,
    parse_graph,
    petersen_graph,
)
from distinguo.oracle import (
    TYPE1,
    TYPE1_D,
    TYPE2,
    TYPE2_D,
    ConstraintSet,
    chromatic_number,
    exact_index,
    search_colouring,
)
from distinguo.verify import (
    ArcColouring,
    colour_automorphisms,
    find_monochromatic,
    is_distinguishing,
)

__version__ = "0.1.0"
