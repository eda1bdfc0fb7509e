"""Cubic rings over a truncated discrete valuation ring F_p[[t]].

Exact (tolerance-zero) constructions and brute-force verifications: the five
cubic algebra shapes, canonical lattices, named ring families and their
over-ring enumeration, trace duals and the Gorenstein test, ideal-class
censuses, and plane-curve singularity naming.
"""

from .algebra import (
    AlgebraElement,
    BranchCase,
    CubicAlgebra,
    alg_mul,
    is_unit_elem,
    make_algebra,
    multival,
    trace_of,
)
from .backend import available_backends, backend_name, set_backend
from .config import RingConfig
from .families import (
    FamilyDescriptor,
    canonical_alpha,
    enumerate_family_descriptors,
    make_Am,
    make_family,
    make_Jm,
    recognize,
    residue_count,
)
from .lattice import (
    Lattice,
    full_lattice,
    integral_colon,
    is_order,
    is_overring,
    lattice_contains,
    lattice_from_generators,
    lattice_index,
    lattice_intersect,
    lattice_product,
    lattice_sum,
    multiplier_ring,
)
from .series import TruncatedSeries, series_inv, series_mul, series_val

__all__ = [
    "AlgebraElement",
    "BranchCase",
    "CubicAlgebra",
    "FamilyDescriptor",
    "Lattice",
    "RingConfig",
    "TruncatedSeries",
    "alg_mul",
    "available_backends",
    "backend_name",
    "canonical_alpha",
    "enumerate_family_descriptors",
    "full_lattice",
    "integral_colon",
    "is_order",
    "is_overring",
    "is_unit_elem",
    "lattice_contains",
    "lattice_from_generators",
    "lattice_index",
    "lattice_intersect",
    "lattice_product",
    "lattice_sum",
    "make_Am",
    "make_algebra",
    "make_family",
    "make_Jm",
    "multiplier_ring",
    "multival",
    "recognize",
    "residue_count",
    "series_inv",
    "series_mul",
    "series_val",
    "set_backend",
    "trace_of",
]
