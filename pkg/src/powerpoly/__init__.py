"""Exact power indices for weighted majority games.

The package computes two representation-compatible indices, the average
weight index and the average representation index, as exact centroids of
rational polytopes, alongside the classic Shapley-Shubik index. All exact
paths run on arbitrary-precision rationals.
"""

from .canonical_games import CANONICAL_GAMES, canonical_games
from .exact_math import (
    RatMatrix,
    Rational,
    decimal_str,
    determinant,
    parse_rational,
    rank,
    rat,
    rational_from_json,
    rational_to_json,
    solve_square_system,
)
from .game_core import (
    Coalition,
    GameFormatError,
    MAX_VOTERS,
    NormalizedRepresentation,
    WeightedGame,
    coalition,
    coalition_str,
    dual_game,
    is_feasible_weights,
    is_representation,
    l1_distance,
    members,
    parse_game,
)
from .indices import (
    AxiomReport,
    EXACT_REP_MAX_VOTERS,
    EXACT_WEIGHT_MAX_VOTERS,
    IndexVector,
    KIND_AVG_REP,
    KIND_AVG_WEIGHT,
    KIND_SSI,
    ScaleExceededError,
    average_representation_index,
    average_weight_index,
    check_axioms,
    dummy_revealing,
    index_to_json,
    is_representation_compatible_at,
    shapley_shubik,
)
from .integer_reps import (
    ConvergenceRow,
    ConvergenceTable,
    GridSummary,
    convergence_experiment,
    enumerate_integer_feasible_weights,
    enumerate_integer_representations,
)
from .polytope import (
    Constraint,
    DegenerateGeometryError,
    EstimateInconclusiveError,
    HPolytope,
    Simplex,
    Vertex,
    build_representation_polytope,
    build_weight_polytope,
    centroid,
    enumerate_vertices,
    estimate_centroid_mc,
    moments,
    polytope_to_json,
    triangulate,
    volume,
)

__version__ = "0.1.0"
