class FountainSimError(Exception):
    """Base class of the errors raised by fountainsim."""


class ConfigError(FountainSimError, ValueError):
    """A run configuration is malformed or a parameter is out of range."""


class PhysicsError(FountainSimError):
    """The requested physical situation cannot be simulated."""


class FountainTooLow(PhysicsError):
    """The launch does not bring the atoms up to the microwave cavity."""


class GridTooCoarse(PhysicsError):
    """A detuning grid does not resolve the Ramsey fringes."""


class StepSizeError(PhysicsError):
    """An integration step violates the explicit-Euler stability bound."""


class NoSurvivingAtoms(PhysicsError):
    """No sampled atom crossed both cavity passes and the probe beam."""


class InsufficientData(PhysicsError):
    """A time series is too short for the requested averaging times."""


class LockLost(FountainSimError):
    """
    The frequency servo left its capture range.

    Attributes
    ----------
    cycle : int
        launch index at which the lock was declared lost
    offset_hz : float
        frequency offset at that launch
    """

    def __init__(self, cycle, offset_hz, limit_hz):
        self.cycle = cycle
        self.offset_hz = offset_hz
        self.limit_hz = limit_hz
        super().__init__(f"Lock lost at cycle {cycle}: |offset| = {abs(offset_hz):.6g} Hz "
                         f"exceeds {limit_hz:.6g} Hz")
