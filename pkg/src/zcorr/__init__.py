"""Zero-correlation observables for entangled two-qubit states, and the
classical 2x2 counterpart where dependence rules zero covariance out."""

from .classical import ClassicalReport, JointDist2x2, analyze, dependence_gap, marginals
from .construction import (
    CaseLabel,
    ConstructionOptions,
    ConstructionResult,
    classification,
    classify,
    construct,
    verify,
    xi_of,
    zce2_residual,
    zce3_residual,
)
from .errors import (
    DegenerateObservable,
    DegenerateValues,
    NonFinite,
    NonHermitianInput,
    NormViolation,
    UnclassifiableState,
    ZeroVector,
)
from .observables import (
    CorrelationReport,
    HermitianObservable,
    ObservableParams,
    assemble,
    covariance,
    expectation,
    local_pair,
)
from .quantum_state import (
    Amplitudes,
    SeparabilityReport,
    StateParams,
    canonicalize,
    from_amplitudes,
    separability,
    to_amplitudes,
    validate,
)

__version__ = "0.1.0"
