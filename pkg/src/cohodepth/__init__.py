"""Depth, dimension and associated-prime workbench for presented
mod-p cohomology rings of finite groups."""

__version__ = "0.1.0"

from .algebra import (
    GradedPolynomial,
    PolyRing,
    PrimeField,
    RingMap,
    RingPresentation,
    parse_poly,
    presentation,
)
from .config import DEFAULT_CONFIG, EngineConfig
from .groebner import (
    IdealBasis,
    buchberger,
    complete,
    ideal,
    ideal_contract,
    ideal_intersect,
    ideal_quotient,
    ideals_equal,
    normal_form,
    radical_member,
    ring_map_kernel,
    validate_map,
)
from .invariants import (
    HilbertSeries,
    ResolutionData,
    depth,
    find_separating_element,
    find_witness,
    hilbert_series,
    is_associated_prime,
    krull_dim,
    min_free_resolution,
    regular_sequence_test,
)
