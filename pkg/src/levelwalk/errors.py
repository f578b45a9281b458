"""Exception types raised by levelwalk."""


class WalkError(ValueError):
    """Base class for all parameter and domain errors."""


class SumError(WalkError):
    """Step probabilities do not sum to one."""


class RangeError(WalkError):
    """A parameter or index lies outside its supported range."""


class DomainError(WalkError):
    """A generating function was evaluated outside its region of convergence."""


class WindowError(WalkError):
    """A lattice window is too small for the requested number of DP steps."""


class SimulationError(RuntimeError):
    """A Monte Carlo trial exceeded the step cap."""
