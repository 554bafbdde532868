"""Expected modularity of probabilistic (uncertain) networks.

Exact computation via brute force, possible-world partitioning with
enumerated Poisson-Binomial PMFs (PWP), and the DFT closed form (FPWP),
plus sampling, thresholding, and weighting baselines.
"""

from .errors import CapacityError, EmptyWorldError, NumericalInstabilityError, ParseError
from .estimators import (
    Estimate,
    brute_force,
    fpwp,
    partition_probability,
    pwp,
    q_cxyz,
    sample_estimate,
    threshold_estimate,
    weighting_estimate,
)
from .generators import (
    SbmParams,
    assign_probabilities,
    entropy_target_probability,
    gen_ba,
    gen_er,
    gen_ffn,
    gen_sbm,
    gen_ws,
    random_assignment,
)
from .graph import (
    CommunityAssignment,
    EdgePartition,
    PossibleWorld,
    ProbabilisticNetwork,
    edge_partition,
    entropy_ratio,
    enumerate_worlds,
    world_probability,
)
from .modularity import modularity_by_community, modularity_pairwise, weighted_modularity
from .poisson_binomial import Pmf, pb_pmf_dft, pb_pmf_dft_per_entry, pb_pmf_dp, pb_pmf_enumeration

__all__ = [
    "CapacityError",
    "CommunityAssignment",
    "EdgePartition",
    "EmptyWorldError",
    "Estimate",
    "NumericalInstabilityError",
    "ParseError",
    "Pmf",
    "PossibleWorld",
    "ProbabilisticNetwork",
    "SbmParams",
    "assign_probabilities",
    "brute_force",
    "edge_partition",
    "entropy_ratio",
    "entropy_target_probability",
    "enumerate_worlds",
    "fpwp",
    "gen_ba",
    "gen_er",
    "gen_ffn",
    "gen_sbm",
    "gen_ws",
    "modularity_by_community",
    "modularity_pairwise",
    "partition_probability",
    "pb_pmf_dft",
    "pb_pmf_dft_per_entry",
    "pb_pmf_dp",
    "pb_pmf_enumeration",
    "pwp",
    "q_cxyz",
    "random_assignment",
    "sample_estimate",
    "threshold_estimate",
    "weighted_modularity",
    "weighting_estimate",
    "world_probability",
]

__version__ = "0.1.0"
