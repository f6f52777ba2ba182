"""
Bargmann-invariant result types
"""

import cmath
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_serializer

from src.models.state import PureState


class TripleBI(BaseModel):
    """Third-order Bargmann invariant and the states it was computed from"""

    model_config = ConfigDict(frozen=True)

    value: complex
    states: tuple[PureState, PureState, PureState]

    @property
    def arg(self) -> float:
        return cmath.phase(self.value)


class VerificationReport(BaseModel):
    """
    Outcome of a null-phase check over sampled triples

    Serialized as {"pass", "max_abs_im", "min_re", "n_triples", "seed"}.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    max_abs_im: float
    min_re: float
    n_triples: int
    seed: int

    @model_serializer
    def _to_wire(self) -> dict[str, Any]:
        return {
            "pass": self.passed,
            "max_abs_im": self.max_abs_im,
            "min_re": self.min_re,
            "n_triples": self.n_triples,
            "seed": self.seed,
        }
