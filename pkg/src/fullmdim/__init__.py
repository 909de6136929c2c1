"""Minimal subshifts of [0,1]^(Z^d) with full mean dimension, built exactly.

The construction nests box tilings of Z^d, fills each tile with a block of
dyadic sub-boxes of P = [0,1]^d_P, and mixes in every refined variant of
the previous block so that one point's orbit closure is minimal while most
coordinates keep large boxes.  Everything is exact: integers of arbitrary
size, dyadic intervals, and rational proportions.
"""
from .blocks import Construction, block_profile, resolve_interval, variant_digit, variant_index
from .dyadic import DyadicInterval, subdivide
from .group import Window, boundary, boundary_size, folner_window, is_invariant
from .limit import Certificate, canonical_point, emit_certificate, load_certificate, point_enclosure, window_pattern
from .schedule import Schedule, eta, eta_limit, select_l1, select_r, verify_eta_properties
from .tiling import TileAddress, TilingHierarchy, build_hierarchy
from .verify import (
    containment_check,
    density_estimate,
    mdim_lower_bound,
    rescale_map_check,
    return_time_witness,
    syndetic_gap_check,
)

__version__ = "0.1.0"
