"""Exact tensor networks for the Motzkin and Fredkin ground states.

Binary-height tilings, height-renormalisation networks, a U(1)-symmetric
holographic network, a sparse exact contraction engine, and mechanised
checks of the local identities relating them.
"""

from __future__ import annotations

from .contraction import amplitude, contract_full, contraction_plan, count_tensors, locked_propagate
from .network import (
    Network,
    boundary_vector,
    build_binary_height_pyramid,
    build_hrn_open,
    build_hrn_periodic,
    build_rectangle,
    build_u1_mera,
    periodic_boundary,
    wrap_fredkin,
)
from .semiring import Poly
from .tensors import LabeledTensor, TensorSet
from .walks import (
    StateVector,
    enumerate_walks,
    ground_state_vector,
    periodic_sector_state,
    schmidt_spectrum,
    walk_area,
)

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "LabeledTensor",
    "TensorSet",
    "Network",
    "StateVector",
    "amplitude",
    "boundary_vector",
    "build_binary_height_pyramid",
    "build_hrn_open",
    "build_hrn_periodic",
    "build_rectangle",
    "build_u1_mera",
    "contract_full",
    "contraction_plan",
    "count_tensors",
    "enumerate_walks",
    "ground_state_vector",
    "locked_propagate",
    "periodic_boundary",
    "periodic_sector_state",
    "schmidt_spectrum",
    "walk_area",
    "wrap_fredkin",
]
