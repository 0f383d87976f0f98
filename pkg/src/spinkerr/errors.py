class SpinKerrError(Exception):
    """Base class for errors raised by spinkerr."""


class DimensionError(SpinKerrError, ValueError):
    """Operators or states with incompatible Fock-space dimensions."""


class SolverError(SpinKerrError, RuntimeError):
    """The steady-state linear system could not be solved."""


class TruncationError(SpinKerrError, RuntimeError):
    """Observables did not plateau below the dimension cap."""


class VacuumStateError(SpinKerrError, ValueError):
    """Correlation function requested for a state with (numerically) no photons."""


class DegeneratePointError(SpinKerrError, ValueError):
    """A closed-form amplitude denominator vanishes at this parameter point."""


class MismatchedPointError(SpinKerrError, ValueError):
    """CW and CCW observables were computed at different parameter points."""
