"""
Geodesic specification, Bloch-sphere star tracks and circle fits
"""

import logging
import math
from typing import Any, Optional

import numpy as np
from pydantic import field_validator, model_validator

from src.models.base import ArrayModel, frozen_array
from src.models.errors import (
    CurveError,
    DimensionMismatchError,
    DomainError,
    OrthogonalStatesError,
)
from src.models.state import OVERLAP_TOL, PureState

logger = logging.getLogger(__name__)

# Tolerance for "real positive" overlaps of gauge-aligned end states
GAUGE_TOL = 1e-12
# Overlaps this close to 1 are treated as identical end states
IDENTICAL_TOL = 1e-12


def symmetric_power_amplitudes(alpha: complex, beta: complex, power: int) -> np.ndarray:
    """
    Amplitudes sqrt(C(m, r)) alpha^(m-r) beta^r of the m-fold degenerate state

    Args:
        alpha: |0> amplitude of the repeated star
        beta: |1> amplitude of the repeated star
        power: Number of stars m = n - 1

    Returns:
        Complex amplitude vector of length m + 1
    """
    a, b = complex(alpha), complex(beta)
    return np.array(
        [math.sqrt(math.comb(power, r)) * a ** (power - r) * b**r for r in range(power + 1)],
        dtype=complex,
    )


class GeodesicSpec(ArrayModel):
    """
    Gauge-aligned end states of a geodesic plus its sampling

    Examples:
        spec = GeodesicSpec.canonical(dim=3, theta=math.pi / 3, n_samples=401)
        spec.xi  # 0.5
    """

    psi1: PureState
    psi2: PureState
    n_samples: int

    @model_validator(mode="after")
    def _check_pair(self) -> "GeodesicSpec":
        _check_overlap(self.psi1, self.psi2)
        if self.n_samples < 2:
            raise ValueError(f"a geodesic needs at least 2 samples, got {self.n_samples}")
        return self

    @classmethod
    def from_states(cls, psi1: PureState, psi2: PureState, n_samples: int) -> "GeodesicSpec":
        """
        Gauge-align psi2 against psi1 and validate the pair

        Raises:
            DimensionMismatchError: If dimensions differ
            OrthogonalStatesError: If the states are orthogonal
            DomainError: If the states coincide up to phase
        """
        if psi1.dim != psi2.dim:
            raise DimensionMismatchError(f"end states have dims {psi1.dim} and {psi2.dim}")
        overlap = complex(np.vdot(psi1.amps, psi2.amps))
        if abs(overlap) <= OVERLAP_TOL:
            raise OrthogonalStatesError("geodesic end states are orthogonal")
        aligned = PureState(amps=psi2.amps * (overlap.conjugate() / abs(overlap)))
        _check_overlap(psi1, aligned)
        if n_samples < 2:
            raise CurveError(f"a geodesic needs at least 2 samples, got {n_samples}")
        return cls(psi1=psi1, psi2=aligned, n_samples=n_samples)

    @classmethod
    def canonical(cls, dim: int, theta: float, n_samples: int) -> "GeodesicSpec":
        """
        Degenerate-star end states at angle theta

        psi1 = |0...0> and psi2 the (dim-1)-fold power of (alpha, beta) with
        alpha = cos(theta)^(1/(dim-1)).

        Raises:
            DomainError: If theta is outside (0, pi/2) or dim < 2
        """
        if dim < 2:
            raise DomainError(f"dimension must be >= 2, got {dim}")
        if not 0.0 < theta < math.pi / 2:
            raise DomainError(f"theta must lie in (0, pi/2), got {theta}")
        power = dim - 1
        alpha = math.cos(theta) ** (1.0 / power)
        beta = math.sqrt(1.0 - alpha * alpha)
        psi2 = PureState.from_amplitudes(symmetric_power_amplitudes(alpha, beta, power))
        return cls.from_states(PureState.basis(dim, 0), psi2, n_samples)

    @property
    def dim(self) -> int:
        return self.psi1.dim

    @property
    def xi(self) -> float:
        """Real overlap <psi1|psi2> = cos(theta)"""
        return float(np.vdot(self.psi1.amps, self.psi2.amps).real)

    @property
    def theta(self) -> float:
        return math.acos(self.xi)

    def params(self) -> np.ndarray:
        """Uniform grid on [0, theta]"""
        return np.linspace(0.0, self.theta, self.n_samples)


def _check_overlap(psi1: PureState, psi2: PureState) -> None:
    if psi1.dim != psi2.dim:
        raise DimensionMismatchError(f"end states have dims {psi1.dim} and {psi2.dim}")
    overlap = complex(np.vdot(psi1.amps, psi2.amps))
    if abs(overlap.imag) > GAUGE_TOL or overlap.real <= OVERLAP_TOL:
        raise OrthogonalStatesError(
            f"end-state overlap {overlap:.6g} is not real positive (gauge-align first)"
        )
    if overlap.real >= 1.0 - IDENTICAL_TOL:
        raise DomainError("end states coincide; the geodesic is a single point")


class StarTrackSet(ArrayModel):
    """
    n-1 continuity-ordered star trajectories on the Bloch sphere

    tracks has shape (n-1, N, 3). pairing lists dual pairs (i, j), with a
    self-dual track k recorded as (k, k). collisions lists interior sample
    indices where two stars met and the track labelling is ambiguous.
    """

    params: np.ndarray
    tracks: np.ndarray
    pairing: tuple[tuple[int, int], ...] = ()
    collisions: tuple[int, ...] = ()

    @field_validator("params", mode="before")
    @classmethod
    def _check_params(cls, value: Any) -> np.ndarray:
        grid = np.asarray(value, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError(f"params must be a non-empty 1-D grid, got shape {grid.shape}")
        return frozen_array(grid, float)

    @field_validator("tracks", mode="before")
    @classmethod
    def _check_tracks(cls, value: Any) -> np.ndarray:
        tracks = np.asarray(value, dtype=float)
        if tracks.ndim != 3 or tracks.shape[2] != 3 or tracks.shape[0] == 0:
            raise ValueError(f"tracks must have shape (k, N, 3), got {tracks.shape}")
        return frozen_array(tracks, float)

    @model_validator(mode="after")
    def _check_shapes(self) -> "StarTrackSet":
        if self.tracks.shape[1] != self.params.size:
            raise ValueError(
                f"{self.tracks.shape[1]} track samples for a grid of {self.params.size}"
            )
        indices = [i for pair in self.pairing for i in pair]
        if any(i < 0 or i >= self.n_tracks for i in indices):
            raise ValueError(f"pairing {self.pairing} references a missing track")
        return self

    @property
    def n_tracks(self) -> int:
        return int(self.tracks.shape[0])

    @property
    def dim(self) -> int:
        return self.n_tracks + 1

    @property
    def self_dual(self) -> Optional[int]:
        """Index of the track paired with itself, if any"""
        for i, j in self.pairing:
            if i == j:
                return i
        return None

    def with_pairing(self, pairing: tuple[tuple[int, int], ...]) -> "StarTrackSet":
        return self.model_copy(update={"pairing": tuple(pairing)})


class CircleFit(ArrayModel):
    """Circle on the unit sphere: center, unit plane normal, radius and fit residual"""

    center: np.ndarray
    normal: np.ndarray
    radius: float
    max_residual: float

    @field_validator("center", "normal", mode="before")
    @classmethod
    def _three_vector(cls, value: Any) -> np.ndarray:
        vec = np.asarray(value, dtype=float)
        if vec.shape != (3,):
            raise ValueError(f"expected a 3-vector, got shape {vec.shape}")
        return frozen_array(vec, float)

    @field_validator("normal")
    @classmethod
    def _unit_normal(cls, value: np.ndarray) -> np.ndarray:
        if abs(float(np.linalg.norm(value)) - 1.0) > 1e-12:
            raise ValueError("circle normal must be a unit vector")
        return value

    @field_validator("radius")
    @classmethod
    def _positive_radius(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError(f"circle radius must be positive, got {value}")
        return value
