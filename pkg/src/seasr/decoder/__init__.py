"""Graph construction and Viterbi decoding."""

from .graph import (
    ADVANCE_PROB,
    SELF_LOOP_PROB,
    STATES_PER_PHONEME,
    DecodingGraph,
    GraphError,
    GraphState,
    build_graph,
    load_graph_recipe,
)
from .scorer import (
    DiagonalGaussianScorer,
    ScorerError,
    TableScorer,
    load_scorer,
    write_gaussian_scorer,
    write_table_scorer,
)
from .search import (
    BeamConfig,
    Hypothesis,
    IncrementalDecoder,
    SearchFailure,
    viterbi_decode,
)

__all__ = [
    "ADVANCE_PROB",
    "SELF_LOOP_PROB",
    "STATES_PER_PHONEME",
    "BeamConfig",
    "DecodingGraph",
    "DiagonalGaussianScorer",
    "GraphError",
    "GraphState",
    "Hypothesis",
    "IncrementalDecoder",
    "ScorerError",
    "SearchFailure",
    "TableScorer",
    "build_graph",
    "load_graph_recipe",
    "load_scorer",
    "viterbi_decode",
    "write_gaussian_scorer",
    "write_table_scorer",
]
