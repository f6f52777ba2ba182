"""
Null phase curve constructions

Qutrit NPCs between |00> and |phi phi> come from a qubit curve
psi(s) = (cos(eta/2), e^{i Gamma} sin(eta/2)) and its mirror image psi'(s) with
-Gamma; the symmetrized pair is real and every Delta_3 along it is positive.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from src.models.errors import DimensionMismatchError, DomainError, ProfileError
from src.models.frame import FrameMap
from src.models.profile import CurveProfile
from src.models.state import Constellation, PureState, StateCurve
from src.services.majorana import reconstruct, root_to_star
from src.services.statespace import RngLike, as_rng
from src.services.transforms import canonical_frame_3d

logger = logging.getLogger(__name__)

# Tolerated excursion of g outside [0, 1] and of g(0), g(theta) away from 1
G_TOL = 1e-12
# Negative 2AC - B^2 within this window is rounding and clamped to zero
DISCRIMINANT_TOL = 1e-12
# eta below this leaves Gamma undefined; it is set to zero there
ETA_FLOOR = 1e-12


def default_g(params: np.ndarray, theta: float) -> np.ndarray:
    """g(s) = cos[s (s - theta)]"""
    return np.cos(params * (params - theta))


def dual_pair_npc(profile: CurveProfile, dim: int = 3) -> StateCurve:
    """
    Qutrit NPC from a qubit curve and its dual

    Stars tan(eta/2) e^{+/- i Gamma} give the state proportional to
    (cos^2(eta/2), sqrt(2) cos(eta/2) sin(eta/2) cos Gamma, sin^2(eta/2)).

    Raises:
        DimensionMismatchError: If dim is not 3
    """
    if dim != 3:
        raise DimensionMismatchError(f"dual_pair_npc builds qutrit curves, got dim {dim}")
    c = np.cos(profile.eta / 2.0)
    s = np.sin(profile.eta / 2.0)
    amps = np.stack([c * c, math.sqrt(2.0) * c * s * np.cos(profile.gamma), s * s], axis=1)
    amps = amps / np.linalg.norm(amps, axis=1, keepdims=True)
    return StateCurve.from_arrays(profile.params, amps.astype(complex))


def selfdual_npc(profile: CurveProfile, dim: int = 3) -> StateCurve:
    """
    Self-dual qutrit NPC psi(s) (x) psi(s) with real psi = (cos(eta/2), sin(eta/2))

    Raises:
        DimensionMismatchError: If dim is not 3
        ProfileError: If the profile carries a nonzero gamma
    """
    if dim != 3:
        raise DimensionMismatchError(f"selfdual_npc builds qutrit curves, got dim {dim}")
    if np.any(profile.gamma != 0.0):
        raise ProfileError("a self-dual curve needs gamma = 0 everywhere")
    return dual_pair_npc(profile, dim)


def _check_g(params: np.ndarray, g: np.ndarray) -> np.ndarray:
    values = np.asarray(g, dtype=float)
    if values.shape != params.shape:
        raise ProfileError(f"g has {values.shape} samples for a grid of {params.shape}")
    if np.any(values < -G_TOL) or np.any(values > 1.0 + G_TOL):
        raise ProfileError("g(s) must lie in [0, 1]")
    if abs(values[0] - 1.0) > G_TOL or abs(values[-1] - 1.0) > G_TOL:
        raise ProfileError(
            f"g must equal 1 at both ends, got {values[0]:.12g} and {values[-1]:.12g}"
        )
    return np.clip(values, 0.0, 1.0)


def example_grid(theta: float, n_samples: int) -> np.ndarray:
    if not 0.0 < theta < math.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta}")
    if n_samples < 2:
        raise DomainError(f"need at least 2 samples, got {n_samples}")
    return np.linspace(0.0, theta, n_samples)


def example_npc(theta: float, g: np.ndarray, chi: float = 0.0) -> StateCurve:
    """
    NPC (g cos s, g sin s, e^{i chi} sqrt(1 - g^2)) from (1, 0, 0) to (cos theta, sin theta, 0)

    Args:
        theta: End angle in (0, pi/2)
        g: Samples of g on linspace(0, theta, len(g)), 0 <= g <= 1, g = 1 at both ends
        chi: Phase of the third component; chi != 0 applies diag(1, 1, e^{i chi})

    Raises:
        ProfileError: If g is out of range or misses its boundary values
    """
    params = example_grid(theta, len(g))
    values = _check_g(params, g)
    amps = np.stack(
        [
            values * np.cos(params),
            values * np.sin(params),
            np.exp(1j * chi) * np.sqrt(np.clip(1.0 - values * values, 0.0, None)),
        ],
        axis=1,
    )
    return StateCurve.from_arrays(params, amps)


def example_end_states(theta: float) -> tuple[PureState, PureState]:
    return (
        PureState.basis(3, 0),
        PureState.from_amplitudes([math.cos(theta), math.sin(theta), 0.0]),
    )


def profile_from_example(theta: float, g: np.ndarray) -> CurveProfile:
    """
    Dual-pair profile that reproduces the example NPC in the degenerate-star frame

    With a = sqrt(2) alpha beta / sin theta and b = beta^2 / sin theta:
        A = g cos s,  B = b sqrt(1 - g^2) - a g sin s,  C = a sqrt(1 - g^2) + b g sin s
        eta = arccos[(A - C) / (A + C)],  Gamma = atan2(sqrt(2AC - B^2), -B)
    Gamma is unwrapped to keep it continuous.

    Raises:
        ProfileError: If A + C vanishes or 2AC - B^2 is negative beyond rounding
    """
    params = example_grid(theta, len(g))
    values = _check_g(params, g)
    xi = math.cos(theta)
    alpha = math.sqrt(xi)
    beta = math.sqrt(1.0 - xi)
    sin_theta = math.sin(theta)
    a = math.sqrt(2.0) * alpha * beta / sin_theta
    b = beta * beta / sin_theta

    complement = np.sqrt(np.clip(1.0 - values * values, 0.0, None))
    big_a = values * np.cos(params)
    big_b = b * complement - a * values * np.sin(params)
    big_c = a * complement + b * values * np.sin(params)

    total = big_a + big_c
    if np.any(total <= 0.0):
        raise ProfileError("A + C vanishes; g does not define a profile")
    discriminant = 2.0 * big_a * big_c - big_b * big_b
    if np.any(discriminant < -DISCRIMINANT_TOL):
        worst = float(discriminant.min())
        raise ProfileError(f"2AC - B^2 = {worst:.3e} is negative; g does not define a profile")
    if np.any(discriminant < 0.0):
        logger.warning(f"Clamping 2AC - B^2 >= {float(discriminant.min()):.3e} to zero")

    # Same angle as arccos[(A - C) / (A + C)], without the loss of accuracy near eta = 0
    eta = 2.0 * np.arctan2(np.sqrt(np.clip(big_c, 0.0, None)), np.sqrt(np.clip(big_a, 0.0, None)))
    gamma = np.arctan2(np.sqrt(np.clip(discriminant, 0.0, None)), -big_b)
    gamma = np.where(eta <= ETA_FLOOR, 0.0, gamma)
    gamma = np.unwrap(gamma)
    # Boundary values are fixed by g(0) = g(theta) = 1; pin them against rounding
    eta[0], eta[-1] = 0.0, 2.0 * math.acos(alpha)
    gamma[0], gamma[-1] = 0.0, 0.0
    return CurveProfile.from_samples(params, eta, gamma, alpha)


def example_frame(theta: float) -> FrameMap:
    """Frame taking the example end states to the degenerate-star pair"""
    return canonical_frame_3d(*example_end_states(theta))


def linear_profile(
    theta: float, n_samples: int, alpha: float, exponent: float = 1.0
) -> CurveProfile:
    """Self-dual profile eta(s) = 2 arccos(alpha) (s / theta)^exponent"""
    params = example_grid(theta, n_samples)
    eta = 2.0 * math.acos(alpha) * (params / theta) ** exponent
    return CurveProfile.from_samples(params, eta, np.zeros(n_samples), alpha)


def random_profile(
    theta: float,
    n_samples: int,
    alpha: float,
    rng: RngLike = None,
    modes: int = 3,
    amplitude: float = 0.5,
) -> CurveProfile:
    """
    Smooth random profile meeting the boundary conditions

    With u = s / theta, eta = eta_end (u + sum_k b_k sin(k pi u) / (k pi)) and
    Gamma = sum_k g_k sin(k pi u), where sum |b_k| <= amplitude and
    sum |g_k| <= amplitude pi / 2. eta therefore rises monotonically from 0 to
    eta_end and |Gamma| < pi / 2, so every star tan(eta/2) e^{+/- i Gamma} has a
    non-negative real part.

    Raises:
        DomainError: If amplitude is outside [0, 1) or modes < 1
    """
    if not 0.0 <= amplitude < 1.0:
        raise DomainError(f"amplitude must lie in [0, 1), got {amplitude}")
    if modes < 1:
        raise DomainError(f"need at least one mode, got {modes}")
    generator = as_rng(rng)
    params = example_grid(theta, n_samples)
    u = params / theta
    k = np.arange(1, modes + 1)
    basis = np.sin(np.outer(math.pi * u, k))
    eta_weights = generator.uniform(-1.0, 1.0, modes) * amplitude / modes
    gamma_weights = generator.uniform(-1.0, 1.0, modes) * amplitude * math.pi / (2.0 * modes)
    eta_end = 2.0 * math.acos(alpha)
    eta = eta_end * (u + basis @ (eta_weights / (k * math.pi)))
    gamma = basis @ gamma_weights
    eta[0], eta[-1] = 0.0, eta_end
    gamma[0], gamma[-1] = 0.0, 0.0
    return CurveProfile.from_samples(params, eta, gamma, alpha)


def npc_nd(
    profiles: Sequence[CurveProfile], dim: int, overlap: Optional[float] = None
) -> StateCurve:
    """
    NPC in dimension n from floor((n-1)/2) dual pairs and, for even n, one self-dual track

    Args:
        profiles: One profile per dual pair, followed by the self-dual profile (Gamma = 0)
            when n is even; all on one grid and with alpha = overlap^(1/(n-1))
        dim: State dimension n >= 3
        overlap: End-state overlap; defaults to alpha^(n-1) of the profiles

    Raises:
        ProfileError: If the profiles disagree with each other, with dim or with overlap
    """
    if dim < 3:
        raise DimensionMismatchError(f"npc_nd needs dim >= 3, got {dim}")
    power = dim - 1
    pairs, odd = divmod(power, 2)
    expected = pairs + odd
    if len(profiles) != expected:
        raise ProfileError(f"dim {dim} needs {expected} profiles, got {len(profiles)}")
    first = profiles[0]
    for profile in profiles[1:]:
        if not np.array_equal(profile.params, first.params):
            raise ProfileError("all profiles must share one grid")
        if abs(profile.alpha - first.alpha) > 1e-12:
            raise ProfileError("all profiles must end at the same star")
    if overlap is not None and abs(first.alpha**power - overlap) > 1e-12:
        raise ProfileError(
            f"profiles end at alpha={first.alpha:.12g}, expected overlap^(1/{power}) "
            f"= {overlap ** (1.0 / power):.12g}"
        )
    if odd and np.any(np.abs(profiles[-1].gamma) > 1e-12):
        raise ProfileError("the self-dual profile must have Gamma = 0")

    roots = []
    for profile in profiles[:pairs]:
        radius = np.tan(profile.eta / 2.0)
        roots.append(radius * np.exp(1j * profile.gamma))
        roots.append(radius * np.exp(-1j * profile.gamma))
    if odd:
        roots.append(np.tan(profiles[-1].eta / 2.0).astype(complex))
    root_grid = np.array(roots)

    amps = np.array(
        [
            reconstruct(Constellation(stars=tuple(root_to_star(x) for x in root_grid[:, i]))).amps
            for i in range(first.n_samples)
        ]
    )
    # Conjugate star pairs give real amplitudes up to the phase reconstruct picks
    amps = amps * np.exp(-1j * np.angle(amps[:, :1]))
    logger.info(f"Built dim {dim} NPC from {pairs} dual pairs and {odd} self-dual track")
    return StateCurve.from_arrays(first.params, amps)
