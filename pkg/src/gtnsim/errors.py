"""Exception types shared across the package."""


class GtnSimError(Exception):
    """Base class for all package errors."""


class DomainError(GtnSimError, ValueError):
    """A parameter is outside its physical domain."""


class LabelError(GtnSimError, KeyError):
    """A mode label is unknown or not present in the register."""


class LabelCollision(GtnSimError, ValueError):
    """Two registers being combined share a mode label."""


class NotXForm(GtnSimError, ValueError):
    """A matrix has support outside the diagonal/anti-diagonal pattern.

    Carries the offending index pair and entry magnitude.
    """

    def __init__(self, index, magnitude, tol):
        self.index = index
        self.magnitude = magnitude
        self.tol = tol
        super().__init__(
            f"entry {index} has modulus {magnitude:.3e} > tol {tol:.3e}"
        )


class FormulaDomainError(GtnSimError, ValueError):
    """The printed bath formula produced an unusable rate.

    Carries the computed rate so callers can report it.
    """

    def __init__(self, gamma, message):
        self.gamma = gamma
        super().__init__(message)


class FilterAnnihilation(GtnSimError, ArithmeticError):
    """The filtering operation removed (essentially) all state weight."""


class NoCrossing(GtnSimError, ValueError):
    """A root finder's bracket does not contain a sign change.

    ``reason`` is ``"already_absent"`` when the tracked quantity is below
    target across the whole bracket, ``"no_crossing_in_bracket"`` when it
    stays above.
    """

    def __init__(self, reason, lo_value, hi_value):
        self.reason = reason
        self.lo_value = lo_value
        self.hi_value = hi_value
        super().__init__(f"{reason}: endpoint values {lo_value:.6g}, {hi_value:.6g}")


class UnknownPreset(GtnSimError, KeyError):
    """Requested figure preset name is not defined."""


class SweepPointError(GtnSimError, RuntimeError):
    """A sweep failed at a specific grid point; wraps the underlying error."""

    def __init__(self, variable, value, subsystem, cause):
        self.variable = variable
        self.value = value
        self.subsystem = subsystem
        super().__init__(
            f"at {variable}={value!r}, subsystem {subsystem}: {cause}"
        )


class DiscrepancyError(GtnSimError, ValueError):
    """Two computation routes that must agree did not."""
