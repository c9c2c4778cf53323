"""hyperturan: exact desk-scale verification toolkit for clique-expansion
extremal problems on uniform hypergraphs and their rainbow variants."""

__version__ = "0.1.0"

from .hypergraph import (
    Hypergraph,
    complete_hypergraph,
    complete_multipartite,
    degree,
    delete_vertices,
    expansion,
    from_json,
    has_matching,
    independent_deletion_family,
    induced,
    link,
    make_hypergraph,
    matching_number,
    star_cover,
    weak_chromatic_number,
)
from .canonical import CanonicalForm, canonical_form, is_isomorphic
from .detectors import (
    Embedding,
    HallViolator,
    LayeredInstance,
    WeightMatrix,
    contains_covering_clique,
    contains_expansion_clique,
    contains_rainbow_expansion_clique,
    contains_super_rainbow,
    find_sunflower,
    heavy_matching,
    layered_from_json,
    make_layered,
    rainbow_assignment,
)
from .constructions import (
    FormulaResult,
    alon_frankl_g_count,
    emc_value,
    generate_construction,
    generate_rainbow_layers,
    gtz_value,
    large_s_value,
    rainbow_value,
    small_s_value,
    turan_partite_count,
)
from .search import (
    ForbiddenSpec,
    SearchOutcome,
    covering_clique,
    expansion_clique,
    matching,
    max_edges_avoiding,
    partition_distance,
    rainbow_max_sum,
    raw_pattern,
)

__all__ = [name for name in dir() if not name.startswith("_")]
