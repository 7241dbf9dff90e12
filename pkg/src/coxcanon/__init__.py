"""Graded canonical modules of multi-section rings, computed degreewise."""
from .backends import BlowupBackend, LatticeBackend, ToricBackend, VarietyBackend
from .lattice import FGAbelianGroup, GroupElement, IntMatrix, SmithDecomposition, hnf, snf
from .multisection import (
    DependentClassesError,
    FreenessVerdict,
    GradedDimTable,
    MultiSectionRing,
    NoAmpleWitnessError,
    canonical_piece_dimension,
    canonical_table,
    cl_R_group,
    class_in_cl_R,
    cox_canonical_degree,
    freeness_test,
    graded_dimension,
    local_domain_probe,
    module_piece_dimension,
    new_ring,
    q_canonical_piece,
    restrict_ring,
    restriction_check,
    top_local_cohomology_dim,
)

__version__ = "0.1.0"
