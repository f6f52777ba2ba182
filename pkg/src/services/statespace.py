"""
Elementary state-space operations: overlaps, gauge fixing, qubit <-> Bloch maps
"""

import logging
import math
from typing import Optional, Union

import numpy as np

from src.models.errors import DimensionMismatchError, NormalizationError, OrthogonalStatesError
from src.models.state import OVERLAP_TOL, RENORM_WINDOW, PureState, Star, StateCurve

logger = logging.getLogger(__name__)

RngLike = Union[np.random.Generator, int, None]


def as_rng(rng: RngLike) -> np.random.Generator:
    """Accept a generator, a seed or None"""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def inner(a: PureState, b: PureState) -> complex:
    """
    Hermitian inner product <a|b> = sum_r conj(a_r) b_r

    Raises:
        DimensionMismatchError: If the states live in different spaces
    """
    if a.dim != b.dim:
        raise DimensionMismatchError(f"cannot take <a|b> for dims {a.dim} and {b.dim}")
    return complex(np.vdot(a.amps, b.amps))


def gauge_align(a: PureState, b: PureState) -> PureState:
    """
    Multiply b by the global phase that makes <a|b> real and positive

    Args:
        a: Reference state
        b: State to re-phase

    Returns:
        e^{i phi} b with <a|e^{i phi} b> > 0

    Raises:
        OrthogonalStatesError: If <a|b> vanishes
    """
    overlap = inner(a, b)
    modulus = abs(overlap)
    if modulus <= OVERLAP_TOL:
        raise OrthogonalStatesError(
            f"cannot gauge-align orthogonal states (|<a|b>| = {modulus:.3e})"
        )
    return PureState(amps=b.amps * (overlap.conjugate() / modulus))


def fs_distance(a: PureState, b: PureState) -> float:
    """Fubini-Study distance arccos|<a|b>|"""
    return math.acos(min(1.0, abs(inner(a, b))))


def star_to_bloch(star: Star) -> np.ndarray:
    return star.bloch


def bloch_to_star(vector: np.ndarray) -> Star:
    """
    Qubit ray whose Bloch vector is the given unit vector

    Raises:
        NormalizationError: If the vector is not unit length within the renormalization window
    """
    vec = np.asarray(vector, dtype=float)
    if vec.shape != (3,):
        raise DimensionMismatchError(f"Bloch vector must have 3 components, got {vec.shape}")
    norm_sq = float(vec @ vec)
    if abs(norm_sq - 1.0) > RENORM_WINDOW:
        raise NormalizationError(f"Bloch vector has squared norm {norm_sq:.12g}, expected 1")
    x, y, z = vec / math.sqrt(norm_sq)
    # Divide by the larger of the two half-angle factors to stay accurate near both poles
    if z >= 0.0:
        alpha = math.sqrt((1.0 + z) / 2.0)
        return Star(alpha=alpha, beta=complex(x, y) / (2.0 * alpha))
    beta = math.sqrt((1.0 - z) / 2.0)
    return Star(alpha=complex(x, -y) / (2.0 * beta), beta=beta)


def spinors_to_bloch(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """
    Vectorized Bloch map for (possibly unnormalized) spinor arrays

    Returns:
        Array of shape alpha.shape + (3,)
    """
    up = np.abs(alpha) ** 2
    down = np.abs(beta) ** 2
    weight = up + down
    cross = np.conj(alpha) * beta
    return np.stack(
        [2.0 * cross.real / weight, 2.0 * cross.imag / weight, (up - down) / weight], axis=-1
    )


def horizontal_lift(curve: StateCurve) -> StateCurve:
    """
    Re-phase every sample so consecutive overlaps are real and positive

    The first sample keeps its phase.
    """
    amps = np.array(curve.amps, dtype=complex)
    for i in range(1, amps.shape[0]):
        overlap = np.vdot(amps[i - 1], amps[i])
        amps[i] *= overlap.conjugate() / abs(overlap)
    return StateCurve.from_arrays(curve.params, amps)


def random_state(dim: int, rng: RngLike = None) -> PureState:
    """Haar-random pure state of dimension dim"""
    generator = as_rng(rng)
    amps = generator.normal(size=dim) + 1j * generator.normal(size=dim)
    return PureState.from_amplitudes(amps / np.linalg.norm(amps))


def random_bloch(count: int, rng: RngLike = None) -> np.ndarray:
    """count points uniformly distributed on the unit sphere"""
    generator = as_rng(rng)
    points = generator.normal(size=(count, 3))
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def random_unitary(dim: int, rng: RngLike = None) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix"""
    generator = as_rng(rng)
    ginibre = generator.normal(size=(dim, dim)) + 1j * generator.normal(size=(dim, dim))
    q, r = np.linalg.qr(ginibre)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def apply_unitary(unitary: np.ndarray, state: PureState, label: Optional[str] = None) -> PureState:
    if unitary.shape != (state.dim, state.dim):
        raise DimensionMismatchError(
            f"{label or 'unitary'} of shape {unitary.shape} cannot act on dim {state.dim}"
        )
    return PureState.from_amplitudes(unitary @ state.amps)
