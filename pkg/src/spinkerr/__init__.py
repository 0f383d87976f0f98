"""Classical, quantum and higher-order nonreciprocity of a spinning Kerr resonator."""

from .analytic import (
    single_mode_amplitudes,
    single_mode_observables,
    two_mode_amplitudes,
    two_mode_observables,
)
from .errors import (
    DegeneratePointError,
    DimensionError,
    MismatchedPointError,
    SolverError,
    SpinKerrError,
    TruncationError,
    VacuumStateError,
)
from .fock import FockOperator, annihilation, embed_two_mode, expectation
from .hamiltonian import ModelPoint, build_h1, build_h2, eigenenergy
from .lindblad import (
    DensityMatrix,
    SteadyStateSolution,
    build_liouvillian,
    check_truncation,
    solve_model,
    steady_state,
)
from .nonreciprocity import NRReport, ToleranceConfig, ratios
from .observables import ObservableSet, g2_zero, g3_zero, mean_photon
from .params import DerivedRates, PhysicalParams, derive_rates
from .sweep import ResultRow, SweepSpec, model_points, run_sweep, solve_point

__version__ = "0.1.0"
