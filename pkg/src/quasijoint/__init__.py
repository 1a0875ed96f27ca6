"""Joint path/fringe statistics of a spin-marked double-slit interferometer.

The pipeline: exact statistics of the bare two-aperture state, the
operational (measured) joint of fringe/phase and a spin marker read out by
an analyzer, the linear inversion that removes the instrumental blurring,
and the resulting quasi-probability joints whose negativity is the
quantum signature.  Plus seeded Monte Carlo shot sampling with propagated
error bars, negativity scans, and a reproducible CLI.
"""

from quasijoint.analysis import (
    NegativityReport,
    ScanGrid,
    negativity_of,
    p_min_discrete,
    p_min_phase,
    scan_negativity,
)
from quasijoint.inversion import (
    SINGULARITY_EPS,
    DeltaCoefficients,
    InversionMatrix,
    PhaseKernel,
    SingularAnalyzer,
    SingularInversion,
    SingularMarking,
    delta_coefficients,
    invert_joint_discrete,
    invert_joint_phase,
    invert_marginal_x,
    invert_marginal_z,
    invert_phase_density,
    mu_phi_kernel,
    mu_x_matrix,
    mu_z_matrix,
    quasi_joint_closed_form,
    quasi_joint_phase_closed_form,
    x_response_matrix,
    z_response_matrix,
)
from quasijoint.marking import (
    OPERATIONAL,
    QUASI,
    CompositeState,
    DiscreteJoint,
    GammaCoefficients,
    MarkerConfig,
    PhaseJoint,
    analyzer_states,
    born_joint_discrete,
    born_joint_phase,
    entangled_state,
    gamma_coefficients,
    marginal_phase,
    marginal_x,
    marginal_z,
    marginal_z_of_phase,
    operational_joint_discrete,
    operational_joint_phase,
)
from quasijoint.sampling import (
    EstimatedQuasiJoint,
    PhaseShots,
    ShotCounts,
    estimate_quasi_joint,
    harmonic_estimates,
    sample_discrete,
    sample_phase,
)
from quasijoint.states import (
    BinaryDistribution,
    BlochExpectations,
    PhaseDensity,
    PureState,
    StateValidationError,
    bloch_from_state,
    evaluate_phase_density,
    exact_interference_distribution,
    exact_path_distribution,
    exact_phase_distribution,
    interference_state,
    phase_grid,
    phase_state,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryDistribution",
    "BlochExpectations",
    "CompositeState",
    "DeltaCoefficients",
    "DiscreteJoint",
    "EstimatedQuasiJoint",
    "GammaCoefficients",
    "InversionMatrix",
    "MarkerConfig",
    "NegativityReport",
    "OPERATIONAL",
    "PhaseDensity",
    "PhaseJoint",
    "PhaseKernel",
    "PhaseShots",
    "PureState",
    "QUASI",
    "ScanGrid",
    "ShotCounts",
    "SINGULARITY_EPS",
    "SingularAnalyzer",
    "SingularInversion",
    "SingularMarking",
    "StateValidationError",
    "analyzer_states",
    "bloch_from_state",
    "born_joint_discrete",
    "born_joint_phase",
    "delta_coefficients",
    "entangled_state",
    "estimate_quasi_joint",
    "evaluate_phase_density",
    "exact_interference_distribution",
    "exact_path_distribution",
    "exact_phase_distribution",
    "gamma_coefficients",
    "harmonic_estimates",
    "interference_state",
    "invert_joint_discrete",
    "invert_joint_phase",
    "invert_marginal_x",
    "invert_marginal_z",
    "invert_phase_density",
    "marginal_phase",
    "marginal_x",
    "marginal_z",
    "marginal_z_of_phase",
    "mu_phi_kernel",
    "mu_x_matrix",
    "mu_z_matrix",
    "negativity_of",
    "operational_joint_discrete",
    "operational_joint_phase",
    "p_min_discrete",
    "p_min_phase",
    "phase_grid",
    "phase_state",
    "quasi_joint_closed_form",
    "quasi_joint_phase_closed_form",
    "sample_discrete",
    "sample_phase",
    "scan_negativity",
    "x_response_matrix",
    "z_response_matrix",
]
