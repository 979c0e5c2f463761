"""Secrecy rate regions and exact codecs for broadcast channels with
receiver side information."""

from .geometry import RatePair, RateRegion, contains, hausdorff, hull_region, subset
from .infotools import (DmcChannel, Pmf, bsc_broadcast, conditional_mi, entropy,
                        is_degraded, mutual_information)
from .lindet import LinDetConfig, Scenario, classify_scenario, verify_exhaustive
from .lindet import capacity_region as lindet_capacity_region
from .lindet import xor_ring_scheme
from .markov import (MartonSpec, MixedSpec, SplitChainSpec, SuperpositionSpec,
                     spec_from_dict)
from .gaussian import GaussianConfig, cap
from .gaussian import capacity_region as gaussian_capacity_region

__version__ = "0.1.0"
