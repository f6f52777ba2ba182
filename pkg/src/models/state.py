"""
State-space value types - pure states, qubit stars, constellations, sampled curves

All types are immutable. Wire formats follow the JSON shapes used by the CLI:
- PureState:     {"dim": n, "re": [...], "im": [...]}
- Star:          {"alpha": [re, im], "beta": [re, im]}
- Constellation: {"dim": n, "stars": [{...}, ...]}
- StateCurve:    {"dim": n, "s": [...], "re": [[...], ...], "im": [[...], ...]}
"""

import logging
import math
from typing import Any, Iterator, Sequence

import numpy as np
from pydantic import field_validator, model_serializer, model_validator

from src.models.base import ArrayModel, frozen_array
from src.models.errors import (
    CurveError,
    DimensionMismatchError,
    NormalizationError,
    OrthogonalStatesError,
)

logger = logging.getLogger(__name__)

# Squared-norm tolerance accepted as-is
NORM_TOL = 1e-12
# Squared-norm deviation that is silently renormalized; beyond it inputs are rejected
RENORM_WINDOW = 1e-9
# Smallest overlap modulus treated as non-orthogonal
OVERLAP_TOL = 1e-12
# |alpha| at or below this is treated as a south-pole star when fixing the phase chart
POLE_TOL = 1e-15


def unit_vector(values: Any, *, min_dim: int, what: str) -> np.ndarray:
    """
    Validate and (within the renormalization window) renormalize a complex vector

    Args:
        values: Array-like complex amplitudes
        min_dim: Minimum admissible length
        what: Name used in error messages

    Returns:
        Read-only complex array with unit norm

    Raises:
        DimensionMismatchError: If the input is not 1-D or too short
        NormalizationError: If the input is not finite or too far from unit norm
    """
    amps = np.asarray(values, dtype=complex)
    if amps.ndim != 1:
        raise DimensionMismatchError(f"{what} amplitudes must be 1-D, got shape {amps.shape}")
    if amps.size < min_dim:
        raise DimensionMismatchError(f"{what} needs dimension >= {min_dim}, got {amps.size}")
    if not np.all(np.isfinite(amps)):
        raise NormalizationError(f"{what} amplitudes must be finite")

    norm_sq = float(np.vdot(amps, amps).real)
    deviation = abs(norm_sq - 1.0)
    if deviation > RENORM_WINDOW:
        raise NormalizationError(
            f"{what} squared norm {norm_sq:.12g} is not 1 (window {RENORM_WINDOW:g})"
        )
    if deviation > NORM_TOL:
        logger.debug(f"Renormalizing {what} (squared norm deviation {deviation:.3e})")
        amps = amps / math.sqrt(norm_sq)
    return frozen_array(amps, complex)


def _pair_to_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pair must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


class PureState(ArrayModel):
    """
    Unit-norm amplitude vector of an n-level system (n >= 2)

    Examples:
        psi = PureState.from_amplitudes([1, 0, 0])
        psi.dim  # 3
    """

    amps: np.ndarray

    @model_validator(mode="before")
    @classmethod
    def _from_wire(cls, data: Any) -> Any:
        if isinstance(data, dict) and "re" in data:
            real = np.asarray(data["re"], dtype=float)
            imag = np.asarray(data.get("im", np.zeros_like(real)), dtype=float)
            if real.shape != imag.shape:
                raise ValueError(f"re/im length mismatch: {real.shape} vs {imag.shape}")
            if "dim" in data and int(data["dim"]) != real.size:
                raise ValueError(f"dim {data['dim']} does not match {real.size} amplitudes")
            return {"amps": real + 1j * imag}
        return data

    @field_validator("amps", mode="before")
    @classmethod
    def _check_amps(cls, value: Any) -> np.ndarray:
        return unit_vector(value, min_dim=2, what="PureState")

    @model_serializer
    def _to_wire(self) -> dict[str, Any]:
        return {"dim": self.dim, "re": self.amps.real.tolist(), "im": self.amps.imag.tolist()}

    @classmethod
    def from_amplitudes(cls, values: Any) -> "PureState":
        """
        Build a state, raising domain errors (not pydantic ones) on bad input

        Args:
            values: Complex amplitudes c_0..c_{n-1}

        Returns:
            Validated PureState
        """
        return cls(amps=unit_vector(values, min_dim=2, what="PureState"))

    @classmethod
    def basis(cls, dim: int, index: int = 0) -> "PureState":
        """Computational basis state |index> of dimension dim"""
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls.from_amplitudes(amps)

    @property
    def dim(self) -> int:
        return int(self.amps.size)


class Star(ArrayModel):
    """
    Qubit ray alpha|0> + beta|1>, stored in a canonical phase chart

    alpha is real non-negative unless it vanishes, in which case beta is real positive.
    """

    alpha: complex
    beta: complex

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        vec = unit_vector(
            [_pair_to_complex(data["alpha"]), _pair_to_complex(data["beta"])],
            min_dim=2,
            what="Star",
        )
        alpha, beta = complex(vec[0]), complex(vec[1])
        if abs(alpha) > POLE_TOL:
            phase = alpha / abs(alpha)
        else:
            phase = beta / abs(beta)
        return {"alpha": alpha / phase, "beta": beta / phase}

    @model_serializer
    def _to_wire(self) -> dict[str, Any]:
        return {
            "alpha": [self.alpha.real, self.alpha.imag],
            "beta": [self.beta.real, self.beta.imag],
        }

    @property
    def spinor(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    @property
    def bloch(self) -> np.ndarray:
        """Bloch vector <psi|sigma|psi>"""
        cross = self.alpha.conjugate() * self.beta
        z = abs(self.alpha) ** 2 - abs(self.beta) ** 2
        return np.array([2.0 * cross.real, 2.0 * cross.imag, z])


def _sort_key(star: Star) -> tuple[float, float]:
    x, y, z = star.bloch
    return float(z), math.atan2(y, x)


class Constellation(ArrayModel):
    """Unordered multiset of n-1 stars, kept in canonical (z, azimuth) order"""

    stars: tuple[Star, ...]

    @model_validator(mode="before")
    @classmethod
    def _from_wire(cls, data: Any) -> Any:
        if isinstance(data, dict) and "stars" in data:
            stars = [s if isinstance(s, Star) else Star.model_validate(s) for s in data["stars"]]
            if "dim" in data and int(data["dim"]) != len(stars) + 1:
                raise ValueError(f"dim {data['dim']} does not match {len(stars)} stars")
            return {"stars": tuple(sorted(stars, key=_sort_key))}
        return data

    @field_validator("stars")
    @classmethod
    def _non_empty(cls, value: tuple[Star, ...]) -> tuple[Star, ...]:
        if not value:
            raise ValueError("a constellation needs at least one star")
        return tuple(sorted(value, key=_sort_key))

    @model_serializer
    def _to_wire(self) -> dict[str, Any]:
        return {"dim": self.dim, "stars": [star.model_dump() for star in self.stars]}

    @property
    def dim(self) -> int:
        return len(self.stars) + 1

    def bloch_points(self) -> np.ndarray:
        """Star Bloch vectors as a (n-1, 3) array"""
        return np.array([star.bloch for star in self.stars])

    def __len__(self) -> int:
        return len(self.stars)

    def __iter__(self) -> Iterator[Star]:  # type: ignore[override]
        return iter(self.stars)


class StateCurve(ArrayModel):
    """
    Ordered samples (s_i, |Psi(s_i)>) of a curve in state space

    amps has shape (N, n): row i is the state at params[i].
    """

    params: np.ndarray
    amps: np.ndarray

    @model_validator(mode="before")
    @classmethod
    def _from_wire(cls, data: Any) -> Any:
        if isinstance(data, dict) and "s" in data:
            real = np.asarray(data["re"], dtype=float)
            imag = np.asarray(data.get("im", np.zeros_like(real)), dtype=float)
            if real.shape != imag.shape:
                raise ValueError(f"re/im shape mismatch: {real.shape} vs {imag.shape}")
            if real.ndim != 2:
                raise ValueError(f"curve amplitudes must be 2-D, got shape {real.shape}")
            if "dim" in data and int(data["dim"]) != real.shape[1]:
                raise ValueError(f"dim {data['dim']} does not match amplitude width")
            data = {"params": data["s"], "amps": real + 1j * imag}
        if not isinstance(data, dict) or "params" not in data:
            return data
        params, amps = _validated_curve(data["params"], data["amps"])
        return {"params": params, "amps": amps}

    @model_serializer
    def _to_wire(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "s": self.params.tolist(),
            "re": self.amps.real.tolist(),
            "im": self.amps.imag.tolist(),
        }

    @classmethod
    def from_states(cls, params: Sequence[float], states: Sequence[PureState]) -> "StateCurve":
        """
        Build a curve from a parameter grid and matching states

        Raises:
            CurveError: If lengths or dimensions disagree
        """
        if len(params) != len(states):
            raise CurveError(f"{len(params)} params for {len(states)} states")
        if not states:
            raise CurveError("a curve needs at least one sample")
        dims = {state.dim for state in states}
        if len(dims) != 1:
            raise DimensionMismatchError(f"curve states have mixed dimensions {sorted(dims)}")
        return cls.from_arrays(params, np.stack([state.amps for state in states]))

    @classmethod
    def from_arrays(cls, params: Any, amps: Any) -> "StateCurve":
        """Build a curve from raw arrays, raising domain errors on bad input"""
        checked_params, checked_amps = _validated_curve(params, amps)
        return cls(params=checked_params, amps=checked_amps)

    @property
    def dim(self) -> int:
        return int(self.amps.shape[1])

    @property
    def n_samples(self) -> int:
        return int(self.params.size)

    def state(self, index: int) -> PureState:
        return PureState(amps=self.amps[index])

    @property
    def states(self) -> tuple[PureState, ...]:
        return tuple(self.state(i) for i in range(self.n_samples))


def _validated_curve(params: Any, amps: Any) -> tuple[np.ndarray, np.ndarray]:
    grid = np.asarray(params, dtype=float)
    rows = np.asarray(amps, dtype=complex)
    if grid.ndim != 1 or grid.size == 0:
        raise CurveError(f"params must be a non-empty 1-D grid, got shape {grid.shape}")
    if not np.all(np.isfinite(grid)):
        raise CurveError("params must be finite")
    if np.any(np.diff(grid) <= 0.0):
        raise CurveError("params must be strictly increasing")
    if rows.ndim != 2 or rows.shape[0] != grid.size:
        raise CurveError(f"amps shape {rows.shape} does not match {grid.size} samples")
    if rows.shape[1] < 2:
        raise DimensionMismatchError(f"curve states need dimension >= 2, got {rows.shape[1]}")
    if not np.all(np.isfinite(rows)):
        raise NormalizationError("curve amplitudes must be finite")

    norm_sq = np.einsum("ij,ij->i", rows.conj(), rows).real
    deviation = np.abs(norm_sq - 1.0)
    worst = int(np.argmax(deviation))
    if deviation[worst] > RENORM_WINDOW:
        raise NormalizationError(
            f"sample {worst} squared norm {norm_sq[worst]:.12g} is not 1 (window {RENORM_WINDOW:g})"
        )
    fix = deviation > NORM_TOL
    if np.any(fix):
        rows = rows.copy()
        rows[fix] /= np.sqrt(norm_sq[fix])[:, None]

    if grid.size > 1:
        overlaps = np.abs(np.einsum("ij,ij->i", rows[:-1].conj(), rows[1:]))
        bad = int(np.argmin(overlaps))
        if overlaps[bad] <= OVERLAP_TOL:
            raise OrthogonalStatesError(f"samples {bad} and {bad + 1} are orthogonal")
    return frozen_array(grid, float), frozen_array(rows, complex)
