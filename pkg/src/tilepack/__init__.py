"""Solvers, generators, and benchmarks for one-dimensional tile packing."""

from .core import (
    Instance,
    Metrics,
    Objective,
    Placement,
    SuffixState,
    Tile,
    TileType,
    align_placement,
    fits_at,
    insertion_offsets,
    instance_from_tiles,
    is_no_holes_certificate,
    merge_set,
    metrics,
    parse_tile,
    trim,
    verify,
    verify_ok,
)
from .exact import (
    CapExceeded,
    SolveResult,
    brute_force,
    dp_doubling,
    dp_general,
    dp_single_type,
)
from .heuristics import OrderStrategy, leftmost_fit, solve_greedy

__version__ = "0.1.0"
