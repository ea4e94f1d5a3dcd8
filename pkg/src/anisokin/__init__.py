"""Four-directional anisotropic relativistic kinematics.

A verification-grade library for the kinematics generated by a fourth-root
length on four distinguished null directions: boost transformations, the
velocity composition algebra with its non-trivial reciprocal, the momentum
map and dispersion relation, low-velocity series, and an exact-rational
oracle that adjudicates every identity the package relies on.
"""

from .errors import (
    DegenerateDenominatorError,
    DomainError,
    KinematicsError,
    SingularInversionError,
    UnknownIdentityError,
)
from .approximations import (
    LorentzReductionReport,
    RemainderOrderReport,
    SeriesResult,
    a_inv_series,
    a_series,
    compose_series,
    energy_series,
    energy_series_corrected,
    invert_series,
    lorentz_reduction_check,
    remainder_order_check,
    subtract_series,
    sync_check,
)
from .metric_momentum import (
    CoMomentum,
    IsotropicVector,
    MassShellQuery,
    dispersion_energy,
    hamiltonian,
    isotropic_vector,
    kinematic_length,
    momentum_from_velocity,
    relative_momentum,
    relative_velocity,
)
from .oracle import (
    EXPECTED_VERDICTS,
    IDENTITY_IDS,
    LedgerEntry,
    full_ledger,
    ledger_json,
    verify_identity,
)
from .transforms import (
    BoostMatrix,
    CharCoords,
    EigenFactors,
    FourVector,
    MatrixGroupReport,
    boost_matrix,
    char_coords,
    compose_matrices_check,
    eigenfactors,
    inv_char_coords,
    momentum_transform,
    transform,
)
from .velocity_algebra import (
    SIGN_PATTERNS,
    CandidateVerdict,
    InvariantVelocityTable,
    SignPattern,
    Velocity3,
    a_factor,
    compose,
    compose_direct,
    invariant_velocity_audit,
    invert,
    invert_direct,
    k_factor,
    sample_domain,
    sample_velocities,
    subtract,
    subtract_via_inverse,
)

__version__ = "0.1.0"
