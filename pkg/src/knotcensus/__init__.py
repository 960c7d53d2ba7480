"""Exact invariants of spatial graph embeddings.

Builds straight-line and polyline embeddings of complete and tripartite
graphs over the rationals, computes linking numbers and second Conway
coefficients of the knots and links their cycles trace, and verifies the
integer identities those invariants satisfy, all in exact arithmetic.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    GenericityExhausted,
    GenericityFailure,
    IdentityViolation,
    InvariantContractError,
    KnotCensusError,
    OracleLimitExceeded,
    SamplingExhausted,
    ScaleLimitExceeded,
)
from .graphs import (
    Cycle,
    DisjointCyclePair,
    SimpleGraph,
    complete_graph,
    enumerate_cycles,
    enumerate_disjoint_pairs,
    k331_graph,
    k331_h_subgraph,
)
from .geometry import (
    SpatialEmbedding,
    cycle_curve,
    embedding_from_json,
    embedding_to_json,
    moment_curve_embedding,
    random_k331_embedding,
    random_polyline_embedding,
    random_rectilinear_embedding,
    read_embedding,
    validate_embedding,
    write_embedding,
)
from .projection import (
    GaussDiagram,
    LinkDiagram,
    ProjectionFrame,
    frame_from_direction,
    frame_sequence,
    gauss_diagram,
    project,
)
from .invariants import (
    ConwayPolynomial,
    InvariantRecord,
    classify_triangle_triangle,
    conway_skein_oracle,
    knot_invariant,
    link_invariant,
    linking_number,
    stick_bound_a2,
)
from .theorems import (
    BoundsReport,
    CensusReport,
    CongruenceReport,
    EmbeddingAnalysis,
    IdentityReport,
    applicable_identities,
    census,
    check_bounds,
    check_congruence,
    check_mod2,
    expected_residue,
    lower_bound_value,
    r_n,
    sum_a2,
    sum_lk_sq,
    upper_bound_value,
    verify_embedding,
    verify_k6_identity,
    verify_k7_identity,
    verify_k331_identity,
    verify_lemma21_1,
    verify_lemma21_2,
    verify_lk34,
    verify_main_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
