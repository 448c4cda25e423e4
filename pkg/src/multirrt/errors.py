"""Exception hierarchy shared across the package."""


class MultiRRTError(Exception):
    """Base class for every error raised by multirrt."""


class DegenerateSegment(MultiRRTError, ValueError):
    """Two points that must differ are closer than the geometric tolerance."""


class OutOfRange(MultiRRTError, ValueError):
    pass


class InsufficientThrust(MultiRRTError, ValueError):
    """Maximum thrust cannot balance gravity and drag with any bank angle left over."""


class PointInCollision(MultiRRTError, ValueError):
    pass


class InvalidScenario(MultiRRTError, ValueError):
    pass


class NoProgress(MultiRRTError, RuntimeError):
    pass


class EmptyInput(MultiRRTError, ValueError):
    pass


class IncompletePlan(MultiRRTError, ValueError):
    pass


class InvalidResult(MultiRRTError, ValueError):
    pass


class MetricsMismatch(MultiRRTError):
    def __init__(self, mismatches):
        self.mismatches = list(mismatches)
        super().__init__("; ".join(self.mismatches))
