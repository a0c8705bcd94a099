"""Representation-theoretic data of su(N) WZW models and their cosets:
integrable weights, modular S-matrices, Verlinde fusion rings, diagonal and
torus coset sector rings, branching-function expansions, and the dimension
identities tying them together."""

from .weights import (
    AlgebraSpec,
    Weight,
    WeightDelta,
    color,
    conformal_weight,
    conjugate_weight,
    in_root_lattice,
    integrable_weights,
    sigma_apply,
)
from .modular import (
    SMatrix,
    asymptotic_dimension,
    product_quantum_dimension,
    quantum_dimension,
    s_matrix,
)
from .fusion import (
    FusionRing,
    IntegralityViolation,
    SimpleCurrentReport,
    fuse,
    fusion_ring,
    product_ring,
    ring_axiom_failures,
    simple_current_check,
    verlinde_tensor,
)
from .coset import (
    CosetRing,
    CosetSector,
    CosetSpec,
    NotFaithful,
    SectorOrbit,
    class_dimension_sums,
    coset_ring,
    coset_statistical_dimension,
    dgh,
    exp_set,
    formula_31_residual,
    identification_orbits,
    kw_identity_check,
    sector_sigma,
    vacuum_orbit_membership,
)
from .torus import (
    TorusClass,
    TorusRing,
    TorusSector,
    torus_class,
    torus_classes,
    torus_exp,
    torus_kw_residual,
    torus_ring,
)
from .characters import (
    BranchingFunction,
    GradedCharacter,
    InconclusiveCutoff,
    NegativeResidual,
    WeightTable,
    coset_energy_offset,
    diagonal_branching,
    freudenthal_character,
    graded_character,
    kw_numeric_ratio,
    peel_branching,
    reconstitute,
    restrict_character,
    sector_branching,
    tensor_characters,
    vacuum_membership,
)
from .maverick import (
    InconsistentRelations,
    MaverickBranchingReport,
    MaverickRing,
    build_maverick_ring,
    maverick_branching,
    maverick_branching_check,
    maverick_dims,
)

__version__ = "0.1.0"
