"""Collaborative belief aggregation and propagation among ranked agents."""
from .benchgen import GeneratorSpec, Profile, error_rate, gen_scenario
from .errors import CtrustError
from .lattice import Dominance, build_partial_order, compare, join_meet, linear_extensions
from .model import BeliefMatrix, GroundTruth, Scenario, validate_scenario
from .obdd import build_propagated, build_unreduced, evaluate, reduce
from .propagation import detect_peer_disagreement, propagate_all, propagate_chain
from .reliability import ErrorStatus, ErrorTally, classify, collaborative_reliability, tally
from .rules import RuleSpec

__version__ = "0.1.0"
