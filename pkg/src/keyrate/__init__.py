"""Secret-key rate regions and allocation games for two interfering pairs.

Two base-station/user pairs agree on keys over a shared interference
channel plus a public feedback link.  The package evaluates the
achievable key-rate pairs for discrete memoryless channels
(:mod:`keyrate.discrete`), the closed-form Gaussian strategies and their
swept rate regions (:mod:`keyrate.gaussian`), and the induced
non-cooperative games with Nash-equilibrium enumeration and closed-form
cross-checks (:mod:`keyrate.game`).  ``keyrate.cli`` exposes all of it
as a command-line tool.
"""

from .discrete import (
    FactoredPmf,
    InnerBoundReport,
    PureStrategy,
    RatePair,
    apply_pure_substitutions,
    expand_joint,
    inner_bound_rates,
    inner_bound_report,
    load_factored_pmf,
    pure_strategy_rates,
)
from .errors import DomainError, ResourceError
from .game import (
    EquilibriumConditions,
    MatrixGame,
    NeMap,
    NeReport,
    SplitResponse,
    analytic_ne_conditions,
    backward_leakage_snr,
    best_split_response,
    build_matrix_game,
    game_report,
    ne_map,
    noise_corner_game,
    noise_split_payoffs,
    pure_ne,
)
from .gaussian import (
    AnParams,
    ChannelParams,
    RegionSample,
    TsParams,
    artificial_noise_brackets,
    artificial_noise_rates,
    hull_contains,
    pareto_mask,
    points_in_hull,
    pure_rates,
    pure_strategy_margins,
    region_hull,
    sweep_region,
    time_sharing_rates,
)
from .info_math import JointPmf, capacity, entropy, marginalize, mutual_information, pos_part

__version__ = "0.1.0"

__all__ = [
    "AnParams",
    "ChannelParams",
    "DomainError",
    "EquilibriumConditions",
    "FactoredPmf",
    "InnerBoundReport",
    "JointPmf",
    "MatrixGame",
    "NeMap",
    "NeReport",
    "RatePair",
    "RegionSample",
    "ResourceError",
    "SplitResponse",
    "PureStrategy",
    "TsParams",
    "analytic_ne_conditions",
    "apply_pure_substitutions",
    "artificial_noise_brackets",
    "artificial_noise_rates",
    "backward_leakage_snr",
    "best_split_response",
    "build_matrix_game",
    "capacity",
    "entropy",
    "expand_joint",
    "game_report",
    "hull_contains",
    "inner_bound_rates",
    "inner_bound_report",
    "load_factored_pmf",
    "marginalize",
    "mutual_information",
    "ne_map",
    "noise_corner_game",
    "noise_split_payoffs",
    "pareto_mask",
    "points_in_hull",
    "pos_part",
    "pure_ne",
    "pure_rates",
    "pure_strategy_margins",
    "pure_strategy_rates",
    "region_hull",
    "sweep_region",
    "time_sharing_rates",
]
