"""
Majorana polynomial model
"""

from typing import Any

import numpy as np
from pydantic import field_validator

from src.models.base import ArrayModel, frozen_array
from src.models.errors import DimensionMismatchError

# Leading coefficients below this fraction of max |f_r| are treated as roots at infinity
LEADING_ZERO_TOL = 1e-14


class MajoranaPolynomial(ArrayModel):
    """
    Coefficients f_0..f_{n-1} of sum_r f_r x^(n-1-r)

    f_0 multiplies the highest power, so a vanishing f_0 lowers the degree and
    each dropped leading coefficient stands for one root at infinity.
    """

    coeffs: np.ndarray

    @field_validator("coeffs", mode="before")
    @classmethod
    def _check_coeffs(cls, value: Any) -> np.ndarray:
        coeffs = np.asarray(value, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size < 2:
            raise DimensionMismatchError(
                f"polynomial needs at least 2 coefficients, got shape {coeffs.shape}"
            )
        if not np.any(coeffs != 0):
            raise ValueError("the zero polynomial has no constellation")
        return frozen_array(coeffs, complex)

    @property
    def dim(self) -> int:
        """Dimension n of the state the polynomial encodes"""
        return int(self.coeffs.size)

    @property
    def degree_deficit(self) -> int:
        """Number of leading coefficients that vanish (roots at infinity)"""
        magnitudes = np.abs(self.coeffs)
        significant = np.flatnonzero(magnitudes > LEADING_ZERO_TOL * magnitudes.max())
        return int(significant[0])

    @property
    def effective(self) -> np.ndarray:
        """Coefficients with the vanishing leading ones stripped"""
        return self.coeffs[self.degree_deficit :]
