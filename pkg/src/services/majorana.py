"""
Majorana star decomposition

An n-level state |Psi> = sum_r c_r |r> maps to the polynomial
sum_r f_r x^(n-1-r) with f_r = (-1)^r c_r / sqrt(r! (n-1-r)!). Each root x gives
the star (1, x) / sqrt(1 + |x|^2); vanishing leading coefficients give south-pole
stars.
"""

import logging
import math

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import cdist

from src.models.polynomial import MajoranaPolynomial
from src.models.state import Constellation, PureState, Star
from src.models.tracks import symmetric_power_amplitudes
from src.services.statespace import RngLike, bloch_to_star, random_bloch

logger = logging.getLogger(__name__)

# Stars closer than this (Bloch distance) count as one degenerate star
DEGENERACY_TOL = 1e-7
# Coefficient-residual floor under which a cluster merge is always accepted
MERGE_RESIDUAL_FLOOR = 1e-13
NEWTON_STEPS = 8

SOUTH_POLE = Star(alpha=0.0, beta=1.0)


def _factorial_weights(power: int) -> np.ndarray:
    """sqrt(r! (m-r)!) for r = 0..m"""
    return np.array(
        [math.sqrt(math.factorial(r) * math.factorial(power - r)) for r in range(power + 1)]
    )


def _signs(size: int) -> np.ndarray:
    return np.where(np.arange(size) % 2 == 0, 1.0, -1.0)


def build_polynomial(psi: PureState) -> MajoranaPolynomial:
    """
    Majorana polynomial of a state

    Args:
        psi: State of dimension n

    Returns:
        Polynomial with f_r = (-1)^r c_r / sqrt(r! (n-1-r)!)
    """
    weights = _factorial_weights(psi.dim - 1)
    return MajoranaPolynomial(coeffs=_signs(psi.dim) * psi.amps / weights)


def root_to_star(root: complex) -> Star:
    """Star (1, x) / sqrt(1 + |x|^2); infinite roots map to the south pole"""
    if not np.isfinite(root):
        return SOUTH_POLE
    if abs(root) <= 1.0:
        scale = math.sqrt(1.0 + abs(root) ** 2)
        return Star(alpha=1.0 / scale, beta=root / scale)
    # (1, x) and (1/x, 1) are the same ray
    inverse = 1.0 / root
    scale = math.sqrt(1.0 + abs(inverse) ** 2)
    return Star(alpha=inverse / scale, beta=1.0 / scale)


def _poly_residual(coeffs: np.ndarray, roots: np.ndarray) -> float:
    rebuilt = coeffs[0] * np.poly(roots) if roots.size else coeffs[:1]
    return float(np.linalg.norm(rebuilt - coeffs) / np.linalg.norm(coeffs))


def _newton(coeffs: np.ndarray, start: complex) -> complex:
    """Newton iteration on a polynomial, keeping only steps that shrink |p|"""
    derivative = np.polyder(coeffs)
    x = complex(start)
    value = abs(np.polyval(coeffs, x))
    for _ in range(NEWTON_STEPS):
        slope = np.polyval(derivative, x)
        if slope == 0 or value == 0:
            break
        candidate = x - np.polyval(coeffs, x) / slope
        candidate_value = abs(np.polyval(coeffs, candidate))
        if not candidate_value < value:
            break
        x, value = complex(candidate), candidate_value
    return x


def _clusters(roots: np.ndarray, degree: int) -> list[np.ndarray]:
    """Groups of roots within the multiple-root accuracy of double precision"""
    tolerance = DEGENERACY_TOL ** (2.0 / degree)
    scale = 1.0 + np.maximum.outer(np.abs(roots), np.abs(roots))
    adjacency = np.abs(roots[:, None] - roots[None, :]) <= tolerance * scale
    count, labels = connected_components(csr_matrix(adjacency), directed=False)
    return [np.flatnonzero(labels == label) for label in range(count)]


def _merge_degenerate(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """
    Replace clusters of nearly equal roots by one multiple root

    A cluster of size k is replaced by its mean refined with Newton on p^(k-1), and
    the merge is kept only if the rebuilt polynomial still matches the coefficients.
    """
    degree = roots.size
    if degree < 2:
        return roots
    baseline = _poly_residual(coeffs, roots)
    accept = max(10.0 * baseline, MERGE_RESIDUAL_FLOOR)
    merged = roots.copy()
    for members in _clusters(roots, degree):
        if members.size < 2:
            continue
        derivative = np.polyder(coeffs, members.size - 1)
        center = _newton(derivative, complex(np.mean(roots[members])))
        trial = merged.copy()
        trial[members] = center
        residual = _poly_residual(coeffs, trial)
        if residual <= accept:
            merged = trial
            logger.debug(f"Merged {members.size} roots at {center:.6g} (residual {residual:.2e})")
    return merged


def polynomial_roots(coeffs: np.ndarray) -> np.ndarray:
    """
    Roots of a polynomial with non-zero leading coefficient

    Companion-matrix eigenvalues, Newton polishing of each root, then merging of
    degenerate clusters.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.size < 2:
        return np.zeros(0, dtype=complex)
    roots = np.roots(coeffs).astype(complex)
    polished = np.array([_newton(coeffs, root) for root in roots], dtype=complex)
    return _merge_degenerate(coeffs, polished)


def decompose(psi: PureState) -> Constellation:
    """
    Majorana constellation of a state

    Args:
        psi: State of dimension n >= 2

    Returns:
        Constellation of n-1 stars, including south-pole stars for roots at infinity
    """
    poly = build_polynomial(psi)
    deficit = poly.degree_deficit
    stars = [SOUTH_POLE] * deficit
    stars.extend(root_to_star(root) for root in polynomial_roots(poly.effective))
    return Constellation(stars=tuple(stars))


def reconstruct(constellation: Constellation) -> PureState:
    """
    State whose constellation is the given multiset

    Expands prod_k (alpha_k x - beta_k), inverts the coefficient map and normalizes.
    """
    coeffs = np.array([1.0 + 0.0j])
    for star in constellation.stars:
        coeffs = np.convolve(coeffs, np.array([star.alpha, -star.beta]))
    power = len(constellation)
    amps = _signs(power + 1) * coeffs * _factorial_weights(power)
    return PureState.from_amplitudes(amps / np.linalg.norm(amps))


def symmetric_power(star: Star, power: int) -> PureState:
    """State whose power stars all sit at the given star"""
    if power < 1:
        raise ValueError(f"symmetric power needs at least one star, got {power}")
    return PureState.from_amplitudes(symmetric_power_amplitudes(star.alpha, star.beta, power))


def multiplicities(
    constellation: Constellation, tolerance: float = DEGENERACY_TOL
) -> tuple[tuple[np.ndarray, int], ...]:
    """
    Cluster coincident stars

    Returns:
        (mean Bloch point, multiplicity) per cluster, largest multiplicity first
    """
    points = constellation.bloch_points()
    adjacency = cdist(points, points) <= tolerance
    count, labels = connected_components(csr_matrix(adjacency), directed=False)
    groups = []
    for label in range(count):
        members = points[labels == label]
        center = members.mean(axis=0)
        groups.append((center / np.linalg.norm(center), int(members.shape[0])))
    return tuple(sorted(groups, key=lambda item: (-item[1], *(-item[0]))))


def constellation_distance(a: Constellation, b: Constellation) -> float:
    """Largest Bloch distance between matched stars under the optimal assignment"""
    if len(a) != len(b):
        raise ValueError(f"constellations have {len(a)} and {len(b)} stars")
    cost = cdist(a.bloch_points(), b.bloch_points())
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def random_constellation(count: int, rng: RngLike = None) -> Constellation:
    """count stars drawn uniformly from the sphere"""
    if count < 1:
        raise ValueError(f"a constellation needs at least one star, got {count}")
    return Constellation(stars=tuple(bloch_to_star(p) for p in random_bloch(count, rng)))
