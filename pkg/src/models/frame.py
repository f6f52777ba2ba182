"""
Unitary frame change taking an end-state pair to its degenerate-star canonical form
"""

from typing import Any

import numpy as np
from pydantic import field_validator, model_validator

from src.models.base import ArrayModel, frozen_array
from src.models.state import PureState

UNITARY_TOL = 1e-12
MAPPING_TOL = 1e-10


class FrameMap(ArrayModel):
    """Unitary W with W @ source[i] == canonical[i]"""

    unitary: np.ndarray
    source: tuple[PureState, PureState]
    canonical: tuple[PureState, PureState]

    @field_validator("unitary", mode="before")
    @classmethod
    def _check_unitary(cls, value: Any) -> np.ndarray:
        matrix = np.asarray(value, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"frame matrix must be square, got shape {matrix.shape}")
        deviation = np.abs(matrix @ matrix.conj().T - np.eye(matrix.shape[0])).max()
        if deviation > UNITARY_TOL:
            raise ValueError(f"frame matrix is not unitary (deviation {deviation:.3e})")
        return frozen_array(matrix, complex)

    @model_validator(mode="after")
    def _check_mapping(self) -> "FrameMap":
        for src, dst in zip(self.source, self.canonical):
            if src.dim != self.dim or dst.dim != self.dim:
                raise ValueError("frame states must match the matrix dimension")
            miss = float(np.linalg.norm(self.unitary @ src.amps - dst.amps))
            if miss > MAPPING_TOL:
                raise ValueError(f"frame does not map source to canonical (miss {miss:.3e})")
        return self

    @property
    def dim(self) -> int:
        return int(self.unitary.shape[0])

    @property
    def inverse(self) -> np.ndarray:
        """W^dagger"""
        return self.unitary.conj().T
