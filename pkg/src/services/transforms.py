"""
Unitary maps from an arbitrary end-state pair to the degenerate-star canonical pair

The canonical pair is |0...0> and the (n-1)-fold power of (alpha, beta), where
alpha^(n-1) equals the overlap of the source pair. Curves built in the canonical
frame are carried back with conjugate_curve(..., "inverse").
"""

import logging
import math
from typing import Literal

import numpy as np

from src.models.errors import DimensionMismatchError, DomainError, OrthogonalStatesError
from src.models.frame import FrameMap
from src.models.state import OVERLAP_TOL, PureState, StateCurve
from src.models.tracks import IDENTICAL_TOL, symmetric_power_amplitudes
from src.services.statespace import gauge_align, inner

logger = logging.getLogger(__name__)

Direction = Literal["forward", "inverse"]


def _aligned_pair(psi1: PureState, psi2: PureState) -> tuple[PureState, float]:
    if psi1.dim != psi2.dim:
        raise DimensionMismatchError(f"pair has dims {psi1.dim} and {psi2.dim}")
    overlap = inner(psi1, psi2)
    if abs(overlap) <= OVERLAP_TOL:
        raise OrthogonalStatesError("cannot map orthogonal states to the canonical frame")
    aligned = gauge_align(psi1, psi2)
    xi = inner(psi1, aligned).real
    if xi >= 1.0 - IDENTICAL_TOL:
        raise DomainError("states coincide up to phase; no canonical frame exists")
    return aligned, xi


def _orthonormal_completion(vectors: list[np.ndarray], dim: int) -> np.ndarray:
    """
    Extend orthonormal vectors to a basis, columns in order

    Candidates are standard basis vectors taken in order of smallest overlap with the
    current span; every projection is applied twice.
    """
    basis = [np.asarray(v, dtype=complex) for v in vectors]
    while len(basis) < dim:
        span = np.array(basis)
        weights = np.linalg.norm(span, axis=0)
        for index in np.argsort(weights, kind="stable"):
            candidate = np.zeros(dim, dtype=complex)
            candidate[index] = 1.0
            for _ in range(2):
                candidate = candidate - span.T @ (span.conj() @ candidate)
            norm = float(np.linalg.norm(candidate))
            if norm > 0.5:
                basis.append(candidate / norm)
                break
    return np.array(basis).T


def canonical_frame_3d(psi1: PureState, psi2: PureState) -> FrameMap:
    """
    Two-stage qutrit frame change onto the degenerate-star pair

    The first stage sends psi1 to |0> and psi2 to (cos theta, sin theta, 0). The second
    stage is the real rotation [[1, 0, 0], [0, a, -b], [0, b, a]] with
    a = sqrt(2) alpha beta / sin theta, b = beta^2 / sin theta, alpha^2 = cos theta.

    Raises:
        DimensionMismatchError: If the states are not qutrits
        OrthogonalStatesError: If the states are orthogonal
        DomainError: If the states coincide
    """
    if psi1.dim != 3 or psi2.dim != 3:
        raise DimensionMismatchError(
            f"canonical_frame_3d needs qutrits, got {psi1.dim} and {psi2.dim}"
        )
    aligned, xi = _aligned_pair(psi1, psi2)
    sin_theta = math.sqrt(1.0 - xi * xi)

    bar = (aligned.amps - xi * psi1.amps) / sin_theta
    # Rotate bar so that its largest component is real, and undo it in the first stage
    phase = np.angle(bar[int(np.argmax(np.abs(bar)))])
    bar = np.exp(-1j * phase) * bar
    completion = _orthonormal_completion([psi1.amps, bar], 3)[:, 2]
    # Row 1 is e^{-i phi} <bar|, so (U|psi2>)_1 = sin theta
    first = np.array([psi1.amps.conj(), np.exp(-1j * phase) * bar.conj(), completion.conj()])

    alpha = math.sqrt(xi)
    beta = math.sqrt(1.0 - xi)
    a = math.sqrt(2.0) * alpha * beta / sin_theta
    b = beta * beta / sin_theta
    second = np.array([[1.0, 0.0, 0.0], [0.0, a, -b], [0.0, b, a]])

    canonical = (
        PureState.basis(3, 0),
        PureState.from_amplitudes(symmetric_power_amplitudes(alpha, beta, 2)),
    )
    logger.debug(f"canonical_frame_3d: theta={math.acos(xi):.6g}, a={a:.6g}, b={b:.6g}")
    return FrameMap(unitary=second @ first, source=(psi1, aligned), canonical=canonical)


def canonical_frame_nd(psi1: PureState, psi2: PureState) -> FrameMap:
    """
    Frame change onto |0...0> and the (n-1)-fold degenerate state with the same overlap

    Both pairs are completed to orthonormal bases (state, normalized orthogonal part,
    completion); W maps one basis onto the other.

    Raises:
        OrthogonalStatesError: If the overlap vanishes
        DomainError: If the states coincide
    """
    aligned, xi = _aligned_pair(psi1, psi2)
    dim = psi1.dim
    power = dim - 1
    alpha = xi ** (1.0 / power)
    beta = math.sqrt(1.0 - alpha * alpha)
    sin_theta = math.sqrt(1.0 - xi * xi)

    target1 = PureState.basis(dim, 0)
    target2 = PureState.from_amplitudes(symmetric_power_amplitudes(alpha, beta, power))

    source_bar = (aligned.amps - xi * psi1.amps) / sin_theta
    target_bar = (target2.amps - xi * target1.amps) / sin_theta
    source_basis = _orthonormal_completion([psi1.amps, source_bar], dim)
    target_basis = _orthonormal_completion([target1.amps, target_bar], dim)
    unitary = target_basis @ source_basis.conj().T
    return FrameMap(unitary=unitary, source=(psi1, aligned), canonical=(target1, target2))


def canonical_frame(psi1: PureState, psi2: PureState) -> FrameMap:
    """Qutrit pairs use the two-stage construction, other dimensions the basis matching"""
    if psi1.dim == 3:
        return canonical_frame_3d(psi1, psi2)
    return canonical_frame_nd(psi1, psi2)


def conjugate_curve(
    frame: FrameMap, curve: StateCurve, direction: Direction = "forward"
) -> StateCurve:
    """
    Apply W (forward) or W^dagger (inverse) to every sample of a curve

    Raises:
        DimensionMismatchError: If the curve and frame dimensions differ
        DomainError: If direction is not forward or inverse
    """
    if curve.dim != frame.dim:
        raise DimensionMismatchError(
            f"frame of dim {frame.dim} cannot act on a dim {curve.dim} curve"
        )
    if direction == "forward":
        amps = curve.amps @ frame.unitary.T
    elif direction == "inverse":
        amps = curve.amps @ frame.unitary.conj()
    else:
        raise DomainError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    return StateCurve.from_arrays(curve.params, amps)
