"""Data-driven inference of qubit measurements from bare outcome statistics."""
from .completeness import (CompletenessVerdict, SubspaceProjector, gen_platonic,
                           gen_regular_polygon, gen_regular_simplex, gen_trine,
                           is_informationally_complete, is_observationally_complete,
                           is_oc_for_support, perturb_set)
from .linalg import ContractViolation, pinv, rank, range_basis, sym_eig
from .mvee import (AffineFrame, FullDimEllipsoid, RangeEllipsoid, SolverError, affine_reduce,
                   ddi_spherical, ellipsoid_contains, ellipsoid_equal, ellipsoid_volume,
                   mvee_full)
from .qubit import (GaugeTransform, InversionError, QubitEffect, QubitPovm, StateSet, born,
                    gauge_apply, gauge_equivalent, mub_povm, povm_range, range_invert,
                    simulate_counts)
from .simplex2d import (Triangle, min_area_enclosing_triangle, nonuniqueness_witness,
                        triangle_contains)

__all__ = [
    "CompletenessVerdict",
    "SubspaceProjector",
    "gen_platonic",
    "gen_regular_polygon",
    "gen_regular_simplex",
    "gen_trine",
    "is_informationally_complete",
    "is_observationally_complete",
    "is_oc_for_support",
    "perturb_set",
    "ContractViolation",
    "pinv",
    "rank",
    "range_basis",
    "sym_eig",
    "AffineFrame",
    "FullDimEllipsoid",
    "RangeEllipsoid",
    "SolverError",
    "affine_reduce",
    "ddi_spherical",
    "ellipsoid_contains",
    "ellipsoid_equal",
    "ellipsoid_volume",
    "mvee_full",
    "GaugeTransform",
    "InversionError",
    "QubitEffect",
    "QubitPovm",
    "StateSet",
    "born",
    "gauge_apply",
    "gauge_equivalent",
    "mub_povm",
    "povm_range",
    "range_invert",
    "simulate_counts",
    "Triangle",
    "min_area_enclosing_triangle",
    "nonuniqueness_witness",
    "triangle_contains",
]

__version__ = "0.1.0"
