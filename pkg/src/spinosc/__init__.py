"""Coupled spin-oscillator laboratory.

Classical mechanics and symplectic invariants of the integrable system
J = (u^2 + v^2)/2 + z, H = (u x + v y)/2 on S^2 x R^2, its quantization as a
family of symmetric tridiagonal band matrices, and the inverse-spectral
pipeline recovering the classical invariants from eigenvalue spacings.
"""

from .classical import (
    FiberParam,
    FlowResult,
    MomentumValue,
    PhasePoint,
    boundary_curve,
    flow_h,
    hamiltonian_vector_field,
    momentum_map,
    poisson_bracket_jh,
    singular_fiber,
)
from .errors import (
    AdmissibilityError,
    ChartError,
    ConstraintError,
    ConvergenceError,
    SpectrumError,
    SpinOscError,
)
from .eigensolve import backend_name, eigenvalues_bisect, sturm_counts
from .inverse import (
    A2_TRUE,
    B22_TRUE,
    EULER_GAMMA,
    RecoveryRow,
    RecoverySeries,
    SpacingDatum,
    convergence_study,
    recover_a2,
    recover_b22_accel,
    recover_b22_simple,
    spacing_for_level,
    t_min,
)
from .polygon import (
    DevelopedLattice,
    WeightedPolygon,
    clip_to_max_abscissa,
    convex_hull,
    develop_spectrum,
    group_action,
    height_estimate,
    reference_polygon,
    vertex_hausdorff,
)
from .quantum import (
    BandMatrix,
    JointSpectrum,
    QuantumParams,
    SpectralColumn,
    build_h_matrix,
    eigenspace_dim,
    j_eigenvalues,
    joint_spectrum,
    sigma_n,
    tridiag_eigenvalues,
)
from .taylor import (
    InvariantResult,
    LinearizedCoords,
    a1_value,
    a2_bracket,
    a2_limit,
    compute_invariants,
    hat_radius_squared,
    kappa_integral_closed,
    log_factor,
    loop_point,
)

__version__ = "0.1.0"
