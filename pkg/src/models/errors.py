"""
Exception hierarchy for state-space computations

Every error is a ValueError so callers that only know the builtin keep working.
"""


class StateSpaceError(ValueError):
    """Base class for all domain errors"""


class NormalizationError(StateSpaceError):
    """Input vector is not unit norm within the renormalization window"""


class DimensionMismatchError(StateSpaceError):
    """Two objects that must share a dimension do not"""


class OrthogonalStatesError(StateSpaceError):
    """An overlap that must be nonzero vanished"""


class DomainError(StateSpaceError):
    """A scalar parameter is outside its admissible range"""


class CollinearPointsError(StateSpaceError):
    """Points do not determine a plane"""


class SingularParameterizationError(StateSpaceError):
    """A closed-form parameterization diverges inside its domain"""


class ProfileError(StateSpaceError):
    """A curve profile violates its boundary conditions or validity range"""


class CurveError(StateSpaceError):
    """A sampled curve is malformed (grid, sample count, dimension)"""
