"""
Value types shared by the services
"""

from src.models.bargmann import TripleBI, VerificationReport
from src.models.errors import (
    CollinearPointsError,
    CurveError,
    DimensionMismatchError,
    DomainError,
    NormalizationError,
    OrthogonalStatesError,
    ProfileError,
    SingularParameterizationError,
    StateSpaceError,
)
from src.models.frame import FrameMap
from src.models.polynomial import MajoranaPolynomial
from src.models.profile import CurveProfile
from src.models.render import RenderSpec
from src.models.state import Constellation, PureState, Star, StateCurve
from src.models.tracks import CircleFit, GeodesicSpec, StarTrackSet

__all__ = [
    "CircleFit",
    "CollinearPointsError",
    "Constellation",
    "CurveError",
    "CurveProfile",
    "DimensionMismatchError",
    "DomainError",
    "FrameMap",
    "GeodesicSpec",
    "MajoranaPolynomial",
    "NormalizationError",
    "OrthogonalStatesError",
    "ProfileError",
    "PureState",
    "RenderSpec",
    "SingularParameterizationError",
    "Star",
    "StarTrackSet",
    "StateCurve",
    "StateSpaceError",
    "TripleBI",
    "VerificationReport",
]
