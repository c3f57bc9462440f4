"""Hybrid genetic-algorithm solver for symmetric and asymmetric TSP."""

from .engine import GaParams, GenerationStats, Population, RunResult, run
from .local_search import l1_pass, l1_window_delta, l2_reversal, reversal_delta
from .operators import cx, ox, pairwise_swap_mutation, pmx
from .tour import render_tour, tour_length, validate_tour
from .tsplib import Instance, TsplibParseError, UnsupportedFormatError, build_euc2d, load_instance, parse_instance

__version__ = "0.1.0"

__all__ = [
    "GaParams",
    "GenerationStats",
    "Instance",
    "Population",
    "RunResult",
    "TsplibParseError",
    "UnsupportedFormatError",
    "build_euc2d",
    "cx",
    "l1_pass",
    "l1_window_delta",
    "l2_reversal",
    "load_instance",
    "ox",
    "pairwise_swap_mutation",
    "parse_instance",
    "pmx",
    "render_tour",
    "reversal_delta",
    "run",
    "tour_length",
    "validate_tour",
]
