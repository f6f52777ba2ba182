"""
Rendering options for Bloch-sphere figures
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

DEFAULT_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")


class RenderSpec(BaseModel):
    """Orthographic projection and styling for a track figure"""

    model_config = ConfigDict(frozen=True)

    view: tuple[float, float, float] = (1.0, 0.6, 0.4)
    size_px: int = Field(default=480, gt=0)
    show_sphere: bool = True
    track_colors: tuple[str, ...] = DEFAULT_PALETTE

    @field_validator("view")
    @classmethod
    def _non_zero(cls, value: tuple[float, float, float]) -> tuple[float, float, float]:
        if not np.all(np.isfinite(value)) or float(np.linalg.norm(value)) == 0.0:
            raise ValueError(f"view direction must be finite and non-zero, got {value}")
        return value

    @field_validator("track_colors")
    @classmethod
    def _non_empty(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if not value:
            raise ValueError("track palette must not be empty")
        return value

    @property
    def view_direction(self) -> np.ndarray:
        """Unit vector pointing from the sphere toward the viewer"""
        vec = np.asarray(self.view, dtype=float)
        return vec / np.linalg.norm(vec)

    def color(self, index: int) -> str:
        return self.track_colors[index % len(self.track_colors)]
