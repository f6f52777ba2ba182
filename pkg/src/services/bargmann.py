"""
Bargmann invariants, geometric phases and null-phase verification
"""

import cmath
import logging
from typing import Sequence

import numpy as np

from src.models.bargmann import TripleBI, VerificationReport
from src.models.errors import DimensionMismatchError, OrthogonalStatesError
from src.models.state import OVERLAP_TOL, PureState, StateCurve

logger = logging.getLogger(__name__)

# Largest |Im Delta_3| accepted on a null phase curve
NPC_IMAG_TOL = 1e-9
# Re Delta_3 must exceed this on a null phase curve
NPC_REAL_TOL = 1e-12


def _cyclic_overlaps(amps: np.ndarray) -> np.ndarray:
    """<Psi_i|Psi_{i+1}> for i = 0..k-1, wrapping around"""
    overlaps = np.einsum("ij,ij->i", amps.conj(), np.roll(amps, -1, axis=0))
    tiny = np.flatnonzero(np.abs(overlaps) <= OVERLAP_TOL)
    if tiny.size:
        i = int(tiny[0])
        raise OrthogonalStatesError(
            f"states {i} and {(i + 1) % amps.shape[0]} are orthogonal; Bargmann invariant undefined"
        )
    return overlaps


def _stack(states: Sequence[PureState]) -> np.ndarray:
    if not states:
        raise ValueError("a Bargmann invariant needs at least one state")
    dims = {state.dim for state in states}
    if len(dims) != 1:
        raise DimensionMismatchError(f"states have mixed dimensions {sorted(dims)}")
    return np.stack([state.amps for state in states])


def bi3(p1: PureState, p2: PureState, p3: PureState) -> TripleBI:
    """
    Third-order Bargmann invariant <p1|p2><p2|p3><p3|p1>

    Raises:
        OrthogonalStatesError: If any pair of the states is orthogonal
    """
    value = complex(np.prod(_cyclic_overlaps(_stack([p1, p2, p3]))))
    return TripleBI(value=value, states=(p1, p2, p3))


def bi_n(states: Sequence[PureState]) -> complex:
    """Cyclic product <Psi_1|Psi_2> ... <Psi_k|Psi_1>"""
    return complex(np.prod(_cyclic_overlaps(_stack(states))))


def geometric_phase_closed(states: Sequence[PureState]) -> float:
    """Geometric phase -arg Delta_k of the geodesic polygon through the states"""
    return -cmath.phase(bi_n(states))


def loop_phase(curve: StateCurve) -> float:
    """Geometric phase of the sampled curve closed by the geodesic chord back to its start"""
    return -cmath.phase(complex(np.prod(_cyclic_overlaps(curve.amps))))


def verify_npc(curve: StateCurve, n_triples: int, rng_seed: int) -> VerificationReport:
    """
    Check Delta_3 > 0 on random sample triples of a curve

    Triples of grid indices are drawn with np.random.default_rng(rng_seed), so the
    same seed always checks the same triples.

    Args:
        curve: Sampled curve
        n_triples: Number of triples to draw
        rng_seed: Seed for the triple sampler

    Returns:
        VerificationReport, passing iff max |Im| <= 1e-9 and min Re > 1e-12

    Raises:
        OrthogonalStatesError: If a drawn triple contains orthogonal samples
    """
    if n_triples < 1:
        raise ValueError(f"n_triples must be positive, got {n_triples}")
    rng = np.random.default_rng(rng_seed)
    index = rng.integers(0, curve.n_samples, size=(n_triples, 3))
    amps = curve.amps

    def overlap(left: np.ndarray, right: np.ndarray) -> np.ndarray:
        return np.einsum("ij,ij->i", amps[left].conj(), amps[right])

    o12 = overlap(index[:, 0], index[:, 1])
    o23 = overlap(index[:, 1], index[:, 2])
    o31 = overlap(index[:, 2], index[:, 0])
    smallest = np.minimum(np.abs(o12), np.minimum(np.abs(o23), np.abs(o31)))
    if np.any(smallest <= OVERLAP_TOL):
        bad = index[int(np.argmin(smallest))]
        raise OrthogonalStatesError(f"orthogonal samples in triple {tuple(int(i) for i in bad)}")

    delta = o12 * o23 * o31
    max_abs_im = float(np.abs(delta.imag).max())
    min_re = float(delta.real.min())
    passed = max_abs_im <= NPC_IMAG_TOL and min_re > NPC_REAL_TOL
    logger.info(
        f"NPC check over {n_triples} triples: max|Im|={max_abs_im:.3e}, "
        f"min Re={min_re:.3e}, pass={passed}"
    )
    return VerificationReport(
        passed=passed,
        max_abs_im=max_abs_im,
        min_re=min_re,
        n_triples=n_triples,
        seed=rng_seed,
    )
