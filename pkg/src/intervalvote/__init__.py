"""Exact-arithmetic voting rules on the interval domain."""

from .core import (
    AnonProfile,
    Interval,
    Profile,
    VotingError,
    anonymize,
    canonical_index,
    canonical_intervals,
    combine,
    delete_endpoint,
    parse_rational,
    render_rational,
    replicate,
)
from .rules import (
    IncompatibleRule,
    PositionThresholdRule,
    ThresholdVector,
    WeightVector,
    check_compatible,
    collective_position,
    collective_position_decomposed,
    decompose_interval,
    endpoint_median_oracle,
    endpoint_median_rule,
    incompatibility_witness,
    individual_position,
    phantom_median_winner,
    ptr_winner,
)
from .axioms import RuleFn, Violation, replay_violation
from .search import (
    SearchBounds,
    enumerate_profiles,
    falsify,
    fixture,
    random_profile,
    sample_vector_pairs,
    theorem2_uniqueness_witness,
)

__all__ = [
    "AnonProfile",
    "Interval",
    "Profile",
    "VotingError",
    "anonymize",
    "canonical_index",
    "canonical_intervals",
    "combine",
    "delete_endpoint",
    "parse_rational",
    "render_rational",
    "replicate",
    "IncompatibleRule",
    "PositionThresholdRule",
    "ThresholdVector",
    "WeightVector",
    "check_compatible",
    "collective_position",
    "collective_position_decomposed",
    "decompose_interval",
    "endpoint_median_oracle",
    "endpoint_median_rule",
    "incompatibility_witness",
    "individual_position",
    "phantom_median_winner",
    "ptr_winner",
    "RuleFn",
    "Violation",
    "replay_violation",
    "SearchBounds",
    "enumerate_profiles",
    "falsify",
    "fixture",
    "random_profile",
    "sample_vector_pairs",
    "theorem2_uniqueness_witness",
]

__version__ = "0.1.0"
