"""
Sampled (eta, Gamma) profile of a qubit curve used to build null phase curves

A profile describes psi(s) = (cos(eta/2), e^{i Gamma} sin(eta/2)) from the north
pole to the star (alpha, beta) with real alpha. Wire format:
{"s": [...], "eta": [...], "gamma": [...], "alpha": a}; alpha is optional on
input and defaults to cos(eta[-1] / 2).
"""

import math
from typing import Any

import numpy as np
from pydantic import field_validator, model_serializer, model_validator

from src.models.base import ArrayModel, frozen_array
from src.models.errors import ProfileError

# Boundary conditions must hold to this accuracy
BOUNDARY_TOL = 1e-9


class CurveProfile(ArrayModel):
    """eta(s), Gamma(s) on a strictly increasing grid with fixed boundary values"""

    params: np.ndarray
    eta: np.ndarray
    gamma: np.ndarray
    alpha: float

    @model_validator(mode="before")
    @classmethod
    def _from_wire(cls, data: Any) -> Any:
        if isinstance(data, dict) and "s" in data:
            eta = np.asarray(data["eta"], dtype=float)
            alpha = data.get("alpha")
            if alpha is None and eta.size:
                alpha = math.cos(float(eta[-1]) / 2.0)
            data = {"params": data["s"], "eta": eta, "gamma": data["gamma"], "alpha": alpha}
        if isinstance(data, dict) and "params" in data:
            if data.get("alpha") is None:
                raise ValueError("profile needs alpha or a non-empty eta")
            params, eta, gamma = _validated_profile(
                data["params"], data["eta"], data["gamma"], float(data["alpha"])
            )
            return {"params": params, "eta": eta, "gamma": gamma, "alpha": float(data["alpha"])}
        return data

    @field_validator("alpha")
    @classmethod
    def _alpha_range(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {value}")
        return value

    @model_serializer
    def _to_wire(self) -> dict[str, Any]:
        return {
            "s": self.params.tolist(),
            "eta": self.eta.tolist(),
            "gamma": self.gamma.tolist(),
            "alpha": self.alpha,
        }

    @classmethod
    def from_samples(cls, params: Any, eta: Any, gamma: Any, alpha: float) -> "CurveProfile":
        """
        Validate and build a profile

        Args:
            params: Strictly increasing grid s_1..s_N
            eta: Polar-angle samples, eta(s_1) = 0 and eta(s_N) = 2 arccos(alpha)
            gamma: Azimuth samples, zero at both ends
            alpha: Real |0> amplitude of the final star

        Raises:
            ProfileError: If shapes or boundary conditions are violated
        """
        if not 0.0 < alpha < 1.0:
            raise ProfileError(f"alpha must lie in (0, 1), got {alpha}")
        grid, eta_arr, gamma_arr = _validated_profile(params, eta, gamma, alpha)
        return cls(params=grid, eta=eta_arr, gamma=gamma_arr, alpha=alpha)

    @property
    def eta_end(self) -> float:
        return 2.0 * math.acos(self.alpha)

    @property
    def n_samples(self) -> int:
        return int(self.params.size)


def _validated_profile(
    params: Any, eta: Any, gamma: Any, alpha: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    grid = np.asarray(params, dtype=float)
    eta_arr = np.asarray(eta, dtype=float)
    gamma_arr = np.asarray(gamma, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ProfileError(f"profile grid needs at least 2 samples, got shape {grid.shape}")
    if eta_arr.shape != grid.shape or gamma_arr.shape != grid.shape:
        raise ProfileError(
            f"eta {eta_arr.shape} and gamma {gamma_arr.shape} must match grid {grid.shape}"
        )
    if not (np.all(np.isfinite(grid)) and np.all(np.isfinite(eta_arr))):
        raise ProfileError("profile samples must be finite")
    if not np.all(np.isfinite(gamma_arr)):
        raise ProfileError("profile samples must be finite")
    if np.any(np.diff(grid) <= 0.0):
        raise ProfileError("profile grid must be strictly increasing")

    eta_end = 2.0 * math.acos(alpha)
    if abs(eta_arr[0]) > BOUNDARY_TOL:
        raise ProfileError(f"eta must start at 0, got {eta_arr[0]:.3e}")
    if abs(eta_arr[-1] - eta_end) > BOUNDARY_TOL:
        raise ProfileError(
            f"eta must end at 2 arccos(alpha) = {eta_end:.12g}, got {eta_arr[-1]:.12g}"
        )
    if abs(gamma_arr[0]) > BOUNDARY_TOL or abs(gamma_arr[-1]) > BOUNDARY_TOL:
        raise ProfileError(
            f"Gamma must vanish at both ends, got {gamma_arr[0]:.3e} and {gamma_arr[-1]:.3e}"
        )
    return frozen_array(grid, float), frozen_array(eta_arr, float), frozen_array(gamma_arr, float)
