"""Reduced Gershgorin disks and shifted diagonal-dominance rank certificates."""
from .core import (
    Certificate,
    Disk,
    DiskUnion,
    GershError,
    NonFiniteError,
    NotRealError,
    NotSquareError,
    ShiftVector,
    as_matrix,
    as_real_matrix,
    classical_disks,
    disk_contains,
    is_diagonally_dominant,
)
from .geometry import (
    Conclusion,
    FeasibilityVerdict,
    PointPairSet,
    build_gram,
    check_distance_constraints,
    gram_verdict,
    hadamard_octahedron,
    octahedron_verdict,
)
from .kernels import BACKEND
from .oracle import (
    EigenSolution,
    PlantedInstance,
    eigenvalues,
    numerical_rank,
    plant_multiple_eigenvalue,
    plant_shifted_dominant,
)
from .reduced_real import (
    RowMedianSummary,
    check_condition3_real,
    reduced_disks_cor14,
    reduced_disks_thm12,
    row_median_with_zero,
    row_median_without_zero,
)
from .shifted_complex import (
    WeiszfeldResult,
    check_condition3,
    geometric_median,
    localization_union,
    search_two_sided,
    verify_two_sided,
)
from .structured import (
    PairDiskReport,
    SymmetryDefect,
    ZeroSumWeightVector,
    almost_symmetric_pair_disks,
    lemma52_bound,
    normal_pair_disks,
    symmetry_defect,
)

__version__ = "0.1.0"
