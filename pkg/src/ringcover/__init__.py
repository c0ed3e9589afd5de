"""Subring and ideal covering numbers of finite rings."""

from .census import CensusResult, canonical_form, census, census_order, profile_table
from .covering import INF, CoveringProfile, CoverProblem, CoverResult, covering_number, min_cover, profile
from .errors import (
    IllDefined,
    MalformedPresentation,
    NonAssociative,
    NotAnIdeal,
    NotASubgroup,
    NotPrime,
    RingError,
    SpaceTooLarge,
    TooLarge,
)
from .lattice import (
    MemberClass,
    additive_closure,
    classify_subset,
    enumerate_subgroups,
    generated_member,
    maximal_members,
    subgroup_records,
)
from .ring import (
    FiniteRing,
    IsoWitness,
    RingPresentation,
    build_family,
    build_named,
    direct_product,
    factor_ring,
    has_identity,
    is_isomorphic,
    opposite,
    validate_presentation,
    zero_ring,
)

__version__ = "0.1.0"
