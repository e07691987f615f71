"""Topological representations of matroids and of their weak maps."""

from .complexes import (
    BettiVector,
    NotSimplicial,
    SimplicialComplex,
    SimplicialMap,
    disjoint_union,
    homology_map,
    iterated_join,
    join,
    reduced_betti,
    sphere,
    suspension_iter,
)
from .diagrams import (
    DiagramMorphism,
    FinitePoset,
    InclusionDiagram,
    NaturalityFailure,
    NotInclusionDiagram,
    colim,
    hocolim,
    homotopic_pair_check,
    induced_map,
    order_complex,
)
from .engstrom import (
    GroupAction,
    ImmersedMatroid,
    Immersion,
    InvalidImmersion,
    NoAtomInImage,
    NotAdmissible,
    NotFree,
    Representation,
    arrangement_flats,
    arrangement_matches_lattice,
    build_diagram,
    build_representation,
    canonical_immersion,
    check_equivariance,
    expected_betti,
    immersed,
    induced_representation_map,
    is_admissible,
    reroute_annihilating,
    validate_immersion,
    verify_stability,
    verify_strict_decrease,
    verify_surjectivity,
    verify_xarrangement,
)
from .matroid import (
    ExchangeFailure,
    FlatMap,
    GeometricLattice,
    KOutOfRange,
    MapClassification,
    Matroid,
    MatroidError,
    NotEquicardinal,
    NotIntersectionClosed,
    NotMatroidal,
    NotSurjective,
    SetMap,
    UnknownElement,
    WhitneyVector,
    classify_map,
    factor_through_truncation,
    induced_flat_map,
    matroid_from_bases,
    matroid_from_flats,
    surjection_rank_witness,
    truncate,
    uniform,
    whitney_first,
)

__all__ = [name for name in dir() if not name.startswith("_")]
