"""
Geodesics in pure-state space and their decomposition into Bloch-sphere star tracks

Geodesics are sampled from the closed form
    |Psi(s)> = cos s |psi1> + sin s (|psi2> - xi |psi1>) / sqrt(1 - xi^2),  0 <= s <= theta
and decomposed sample by sample into Majorana stars. For degenerate-star end
states the tracks also have closed forms (analytic_tracks_3d, ansatz_tracks_nd)
that serve as oracles for the generic decomposition.
"""

import cmath
import logging
import math
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from src.models.errors import (
    CollinearPointsError,
    CurveError,
    DimensionMismatchError,
    DomainError,
    SingularParameterizationError,
)
from src.models.frame import FrameMap
from src.models.state import PureState, StateCurve
from src.models.tracks import CircleFit, GeodesicSpec, StarTrackSet, symmetric_power_amplitudes
from src.services.majorana import decompose
from src.services.statespace import horizontal_lift, spinors_to_bloch
from src.services.transforms import canonical_frame

logger = logging.getLogger(__name__)

# Two stars closer than this at an interior sample make the track labelling ambiguous
COLLISION_TOL = 1e-6
# Relative spread allowed in the steps of a "uniform" grid
UNIFORM_GRID_RTOL = 1e-9
# Degenerate-form end states must match to this accuracy
CANONICAL_FORM_TOL = 1e-10
# Smallest-to-middle scatter eigenvalue ratio under which points are collinear
COLLINEAR_RTOL = 1e-20


def geodesic_curve(spec: GeodesicSpec) -> StateCurve:
    """
    Sample the geodesic between the end states of spec on a uniform grid

    The first and last samples are the end states themselves.
    """
    xi = spec.xi
    sin_theta = math.sqrt(1.0 - xi * xi)
    tangent = (spec.psi2.amps - xi * spec.psi1.amps) / sin_theta
    params = spec.params()
    amps = np.cos(params)[:, None] * spec.psi1.amps + np.sin(params)[:, None] * tangent
    amps[0] = spec.psi1.amps
    amps[-1] = spec.psi2.amps
    logger.info(f"Sampled dim {spec.dim} geodesic, theta={spec.theta:.6g}, N={spec.n_samples}")
    return StateCurve.from_arrays(params, amps)


def curve_length(curve: StateCurve) -> float:
    """
    Fubini-Study length of a sampled curve

    Integrates the norm of the horizontal velocity u - <Psi|u> Psi, with u from
    second-order finite differences, by the trapezoid rule.

    Raises:
        CurveError: If the curve has fewer than 2 samples
    """
    if curve.n_samples < 2:
        raise CurveError(f"curve length needs at least 2 samples, got {curve.n_samples}")
    edge_order = 2 if curve.n_samples >= 3 else 1
    velocity = np.gradient(curve.amps, curve.params, axis=0, edge_order=edge_order)
    vertical = np.einsum("ij,ij->i", curve.amps.conj(), velocity)
    horizontal = velocity - vertical[:, None] * curve.amps
    speed = np.linalg.norm(horizontal, axis=1)
    return float(trapezoid(speed, curve.params))


def geodesic_residual(curve: StateCurve) -> float:
    """
    Largest violation of Psi'' + <Psi'|Psi'> Psi = 0 over interior samples

    The curve is horizontally lifted first so the value does not depend on the gauge.

    Args:
        curve: Curve on a uniform grid with at least 5 samples

    Raises:
        CurveError: If the grid is not uniform or too short
    """
    if curve.n_samples < 5:
        raise CurveError(f"geodesic residual needs at least 5 samples, got {curve.n_samples}")
    steps = np.diff(curve.params)
    if not np.allclose(steps, steps.mean(), rtol=UNIFORM_GRID_RTOL, atol=0.0):
        raise CurveError("geodesic residual needs a uniform parameter grid")
    h = float(steps.mean())

    amps = horizontal_lift(curve).amps
    second = (amps[2:] - 2.0 * amps[1:-1] + amps[:-2]) / (h * h)
    first = (amps[2:] - amps[:-2]) / (2.0 * h)
    speed_sq = np.einsum("ij,ij->i", first.conj(), first).real
    residual = second + speed_sq[:, None] * amps[1:-1]
    return float(np.linalg.norm(residual, axis=1).max())


def _min_pair_distance(points: np.ndarray) -> float:
    if points.shape[0] < 2:
        return math.inf
    distances = cdist(points, points)
    return float(distances[np.triu_indices(points.shape[0], k=1)].min())


def decompose_curve(curve: StateCurve) -> StarTrackSet:
    """
    Split a curve into n-1 continuous star tracks

    Every sample is decomposed independently; stars are then assigned to tracks by
    an optimal assignment against the linear extrapolation of the previous two
    samples. Interior samples where two stars coincide are reported in
    StarTrackSet.collisions.
    """
    points = np.array([decompose(state).bloch_points() for state in curve.states])
    n_samples, n_tracks, _ = points.shape
    tracks = np.empty((n_tracks, n_samples, 3))
    tracks[:, 0] = points[0]
    collisions = []
    for i in range(1, n_samples):
        predicted = tracks[:, i - 1] if i == 1 else 2.0 * tracks[:, i - 1] - tracks[:, i - 2]
        rows, cols = linear_sum_assignment(cdist(predicted, points[i]))
        tracks[rows, i] = points[i][cols]
        if i < n_samples - 1 and _min_pair_distance(points[i]) <= COLLISION_TOL:
            collisions.append(i)
    if collisions:
        logger.warning(
            f"Star tracks collide at {len(collisions)} interior samples "
            f"(first s={curve.params[collisions[0]]:.6g}); labels there are ambiguous"
        )
    return StarTrackSet(params=curve.params, tracks=tracks, collisions=tuple(collisions))


def _canonical_form(spec: GeodesicSpec) -> tuple[float, float]:
    """(alpha, beta) of the degenerate end star, or DomainError if the ends are not canonical"""
    power = spec.dim - 1
    alpha = spec.xi ** (1.0 / power)
    beta = math.sqrt(1.0 - alpha * alpha)
    expected1 = PureState.basis(spec.dim, 0).amps
    expected2 = symmetric_power_amplitudes(alpha, beta, power)
    if (
        np.linalg.norm(spec.psi1.amps - expected1) > CANONICAL_FORM_TOL
        or np.linalg.norm(spec.psi2.amps - expected2) > CANONICAL_FORM_TOL
    ):
        raise DomainError(
            "end states are not |0...0> and a real degenerate-star state; "
            "map them with canonical_geodesic first"
        )
    return alpha, beta


def _closed_form_tracks(
    spec: GeodesicSpec, interior: np.ndarray, alpha: float, beta: float
) -> StarTrackSet:
    params = spec.params()
    end = spinors_to_bloch(np.array([alpha]), np.array([beta]))[0]
    tracks = np.concatenate(
        [interior, np.broadcast_to(end, (interior.shape[0], 1, 3))], axis=1
    )
    return StarTrackSet(params=params, tracks=tracks, pairing=dual_pairs(spec.dim))


def analytic_tracks_3d(spec: GeodesicSpec) -> StarTrackSet:
    """
    Closed-form star tracks of a qutrit geodesic between degenerate-star end states

    x_(+/-)(s) = (a sin s +/- i sqrt(b sin 2s - a^2 sin^2 s)) / (sqrt(2) cos s) with
    a = sqrt(2) alpha beta / sin theta and b = beta^2 / sin theta. Track 0 is the
    "+" root. Samples cover [0, theta); the end star is appended exactly.

    Raises:
        DimensionMismatchError: If spec is not a qutrit geodesic
        DomainError: If the end states are not in degenerate canonical form
    """
    if spec.dim != 3:
        raise DimensionMismatchError(f"analytic_tracks_3d needs dim 3, got {spec.dim}")
    alpha, beta = _canonical_form(spec)
    sin_theta = math.sqrt(1.0 - spec.xi**2)
    a = math.sqrt(2.0) * alpha * beta / sin_theta
    b = beta * beta / sin_theta

    s = spec.params()[:-1]
    radicand = np.maximum(b * np.sin(2.0 * s) - (a * np.sin(s)) ** 2, 0.0)
    denominator = math.sqrt(2.0) * np.cos(s)
    roots = np.stack(
        [
            (a * np.sin(s) + 1j * np.sqrt(radicand)) / denominator,
            (a * np.sin(s) - 1j * np.sqrt(radicand)) / denominator,
        ]
    )
    interior = spinors_to_bloch(np.ones_like(roots), roots)
    return _closed_form_tracks(spec, interior, alpha, beta)


def _delta(power: int) -> complex:
    """Principal (n-1)th root of the product of the (n-1)th roots of unity"""
    # The product is (-1)^(m-1); its principal argument is 0 or pi
    return cmath.exp(1j * math.pi * ((power - 1) % 2) / power)


def root_phases(dim: int) -> np.ndarray:
    """Delta * omega_k for k = 0..n-2"""
    power = dim - 1
    return _delta(power) * np.exp(2j * math.pi * np.arange(power) / power)


def ansatz_tracks_nd(spec: GeodesicSpec) -> StarTrackSet:
    """
    Closed-form star tracks for degenerate-star end states in any dimension n >= 3

    Star k is the ray of |0> + t_k(s) |phi> with |phi> = (alpha, beta),
    t_k = Delta omega_k A(s)^(1/(n-1)) and
    A(s) = sin s / (cos s sqrt(1 - xi^2) - xi sin s). Samples cover [0, theta); the
    end star is appended exactly.

    Raises:
        DomainError: If the end states are not in degenerate canonical form
        SingularParameterizationError: If A(s) diverges before theta
    """
    if spec.dim < 3:
        raise DimensionMismatchError(f"ansatz_tracks_nd needs dim >= 3, got {spec.dim}")
    alpha, beta = _canonical_form(spec)
    power = spec.dim - 1
    xi = spec.xi

    s = spec.params()[:-1]
    denominator = np.cos(s) * math.sqrt(1.0 - xi * xi) - xi * np.sin(s)
    if np.any(denominator <= 0.0):
        bad = float(s[np.argmax(denominator <= 0.0)])
        raise SingularParameterizationError(f"A(s) diverges at s={bad:.6g} < theta")
    amplitude = (np.sin(s) / denominator) ** (1.0 / power)
    t = root_phases(spec.dim)[:, None] * amplitude[None, :]
    interior = spinors_to_bloch(1.0 + t * alpha, t * beta)
    return _closed_form_tracks(spec, interior, alpha, beta)


def radius_formula(n: int, k: int, xi: float) -> float:
    """
    Radius of the circle traced by star k of an n-level geodesic

    R_k = 2 beta / sqrt(4 beta^2 - alpha^2 (conj(Delta omega_k) - Delta omega_k)^2)
    with alpha = xi^(1/(n-1)) and beta = sqrt(1 - alpha^2).

    Raises:
        DomainError: If n < 3, k is out of range or xi is outside (0, 1)
    """
    if n < 3:
        raise DomainError(f"radius formula needs n >= 3, got {n}")
    if not 0 <= k <= n - 2:
        raise DomainError(f"track index must lie in [0, {n - 2}], got {k}")
    if not 0.0 < xi < 1.0:
        raise DomainError(f"overlap must lie in (0, 1), got {xi}")
    alpha = xi ** (1.0 / (n - 1))
    beta = math.sqrt(1.0 - alpha * alpha)
    phase = root_phases(n)[k]
    difference = phase.conjugate() - phase
    return float(2.0 * beta / math.sqrt((4.0 * beta * beta - alpha * alpha * difference**2).real))


def dual_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """
    Dual-pair labelling of the closed-form tracks

    Tracks i and j mirror each other when Delta omega_i = conj(Delta omega_j). With the
    principal Delta this means i + j = 0 (mod n-1) for even n, which leaves track 0
    self-dual, and i + j = n-2 (mod n-1) for odd n.

    Returns:
        Sorted pairs (i, j) with i <= j; a self-dual track k appears as (k, k)
    """
    if n < 3:
        raise DomainError(f"dual pairs need n >= 3, got {n}")
    power = n - 1
    target = 0 if n % 2 == 0 else n - 2
    pairs = []
    for i in range(power):
        j = (target - i) % power
        if i <= j:
            pairs.append((i, j))
    return tuple(pairs)


def fit_circle(points: np.ndarray) -> CircleFit:
    """
    Fit a circle lying on the unit sphere

    The plane normal starts from averaged triple cross products
    (p2 - p1) x (p3 - p1) and is refined as the smallest-variance direction of the
    point scatter. The circle center is the foot of the plane on the normal through
    the origin.

    Raises:
        CollinearPointsError: If the points do not span a plane
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 3:
        raise CollinearPointsError(f"circle fit needs at least 3 points in 3D, got {pts.shape}")

    stride = max(1, pts.shape[0] // 3)
    first, second, third = pts[: -2 * stride], pts[stride:-stride], pts[2 * stride :]
    crosses = np.cross(second - first, third - first)
    reference = crosses[int(np.argmax(np.linalg.norm(crosses, axis=1)))]
    signs = np.where(crosses @ reference < 0.0, -1.0, 1.0)
    initial = (signs[:, None] * crosses).sum(axis=0)

    centered = pts - pts.mean(axis=0)
    eigenvalues, eigenvectors = np.linalg.eigh(centered.T @ centered)
    if eigenvalues[2] <= 0.0 or eigenvalues[1] <= COLLINEAR_RTOL * eigenvalues[2]:
        raise CollinearPointsError("points are collinear or coincident")
    normal = eigenvectors[:, 0]
    if float(normal @ initial) < 0.0:
        normal = -normal

    offset = float(np.mean(pts @ normal))
    center = offset * normal
    distances = np.linalg.norm(pts - center, axis=1)
    radius = float(distances.mean())
    max_residual = float(
        max(np.abs(pts @ normal - offset).max(), np.abs(distances - radius).max())
    )
    return CircleFit(center=center, normal=normal, radius=radius, max_residual=max_residual)


def match_tracks(a: StarTrackSet, b: StarTrackSet) -> tuple[tuple[int, ...], float]:
    """
    Optimal whole-track relabelling of b onto a

    Returns:
        (permutation, distance) where b track permutation[i] follows a track i and
        distance is the largest pointwise Bloch distance after relabelling
    """
    if a.tracks.shape != b.tracks.shape:
        raise DimensionMismatchError(
            f"track sets have shapes {a.tracks.shape} and {b.tracks.shape}"
        )
    gaps = np.linalg.norm(a.tracks[:, None] - b.tracks[None, :], axis=3).max(axis=2)
    rows, cols = linear_sum_assignment(gaps)
    return tuple(int(c) for c in cols), float(gaps[rows, cols].max())


def reflect(points: np.ndarray, plane_normal: np.ndarray) -> np.ndarray:
    """Mirror points through the plane through the origin with the given normal"""
    normal = np.asarray(plane_normal, dtype=float)
    normal = normal / np.linalg.norm(normal)
    return points - 2.0 * (points @ normal)[..., None] * normal


def end_star_plane(tracks: StarTrackSet) -> np.ndarray:
    """
    Normal of the great-circle plane through the first and last star of track 0

    Raises:
        CollinearPointsError: If the end stars coincide or are antipodal
    """
    start, end = tracks.tracks[0, 0], tracks.tracks[0, -1]
    normal = np.cross(start, end)
    norm = float(np.linalg.norm(normal))
    if norm <= 1e-12:
        raise CollinearPointsError("end stars do not determine a great circle")
    return normal / norm


def reflection_residual(
    tracks: StarTrackSet, i: int, j: int, plane_normal: np.ndarray
) -> float:
    """Largest distance between track i and the mirror image of track j"""
    mirrored = reflect(tracks.tracks[j], plane_normal)
    return float(np.linalg.norm(tracks.tracks[i] - mirrored, axis=1).max())


def detect_dual_pairs(
    tracks: StarTrackSet, plane_normal: Optional[np.ndarray] = None, tolerance: float = 1e-6
) -> tuple[tuple[int, int], ...]:
    """
    Pair tracks that are mirror images through the end-star great-circle plane

    Returns:
        Sorted pairs (i, j), i <= j, whose reflection residual is within tolerance;
        (k, k) marks a self-dual track
    """
    normal = end_star_plane(tracks) if plane_normal is None else np.asarray(plane_normal)
    count = tracks.n_tracks
    mirrored = reflect(tracks.tracks, normal)
    cost = np.linalg.norm(tracks.tracks[:, None] - mirrored[None, :], axis=3).max(axis=2)
    rows, cols = linear_sum_assignment(cost)
    partner = dict(zip(rows.tolist(), cols.tolist()))
    pairs = set()
    for i in range(count):
        j = partner[i]
        if partner[j] == i and cost[i, j] <= tolerance:
            pairs.add((min(i, j), max(i, j)))
    if 2 * len(pairs) - sum(1 for i, j in pairs if i == j) != count:
        logger.warning(f"Only {len(pairs)} mirror pairs found among {count} tracks")
    return tuple(sorted(pairs))


def canonical_geodesic(
    psi1: PureState, psi2: PureState, n_samples: int
) -> tuple[GeodesicSpec, FrameMap]:
    """
    Canonical-frame geodesic for arbitrary end states

    Returns:
        (spec, frame) with spec between the degenerate-star images of the end states;
        conjugating its curve with frame in the inverse direction gives the geodesic
        between the original (gauge-aligned) states
    """
    frame = canonical_frame(psi1, psi2)
    spec = GeodesicSpec.from_states(frame.canonical[0], frame.canonical[1], n_samples)
    return spec, frame
