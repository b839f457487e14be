"""Quaternion amplitude calculus over extended spin phase spaces."""

__version__ = "0.1.0"

from .bell_audit import (
    CorrelationTarget,
    FeasibilityResult,
    audit_isotropic,
    chsh,
    classical_feasibility,
    correlation_matrix,
)
from .errors import SpinEphaseError
from .inference import (
    ProbabilityTable,
    born_single,
    conditional_pi,
    consistency_report,
    interference_decomposition,
    joint_pi,
    marginal_amplitude,
    sequential_pi,
)
from .phase_space import DirectionSet, directions_from_spherical, enumerate_configs
from .quaternion import Quaternion, embed_direction
from .singlet import SingletState, build_singlet, joint_outcome_distribution, sample_outcomes
from .states import AmplitudeState, build_eigenstate, build_isotropic, to_dense

__all__ = [
    "AmplitudeState",
    "CorrelationTarget",
    "DirectionSet",
    "FeasibilityResult",
    "ProbabilityTable",
    "Quaternion",
    "SingletState",
    "SpinEphaseError",
    "audit_isotropic",
    "born_single",
    "build_eigenstate",
    "build_isotropic",
    "build_singlet",
    "chsh",
    "classical_feasibility",
    "conditional_pi",
    "consistency_report",
    "correlation_matrix",
    "directions_from_spherical",
    "embed_direction",
    "enumerate_configs",
    "interference_decomposition",
    "joint_outcome_distribution",
    "joint_pi",
    "marginal_amplitude",
    "sample_outcomes",
    "sequential_pi",
    "to_dense",
]
