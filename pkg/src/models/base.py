"""
Shared base for immutable pydantic models that carry numpy arrays
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict


def frozen_array(values: Any, dtype: Any) -> np.ndarray:
    """
    Copy values into a read-only numpy array

    Args:
        values: Array-like input
        dtype: Target dtype

    Returns:
        Read-only array
    """
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def _field_equal(left: Any, right: Any) -> bool:
    if isinstance(left, np.ndarray) or isinstance(right, np.ndarray):
        return bool(np.array_equal(np.asarray(left), np.asarray(right)))
    if isinstance(left, (list, tuple)) and isinstance(right, (list, tuple)):
        return len(left) == len(right) and all(_field_equal(a, b) for a, b in zip(left, right))
    return bool(left == right)


class ArrayModel(BaseModel):
    """Frozen model whose equality is exact, field by field, arrays included"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return all(
            _field_equal(getattr(self, name), getattr(other, name))
            for name in type(self).model_fields
        )
