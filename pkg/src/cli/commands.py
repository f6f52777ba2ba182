"""
Command implementations for the msr command-line tool

Each cmd_* function takes the parsed arguments and the settings and returns the
process exit code. Input errors are raised and mapped to exit code 2 by main.
"""

import argparse
import logging
import math
from typing import Any, Optional

import numpy as np

from src.config.settings import Settings
from src.models.errors import CollinearPointsError, CurveError, ProfileError
from src.models.profile import CurveProfile
from src.models.render import RenderSpec
from src.models.state import PureState, StateCurve
from src.models.tracks import CircleFit, GeodesicSpec, StarTrackSet
from src.services.bargmann import loop_phase, verify_npc
from src.services.geodesic import (
    analytic_tracks_3d,
    ansatz_tracks_nd,
    canonical_geodesic,
    curve_length,
    decompose_curve,
    detect_dual_pairs,
    end_star_plane,
    fit_circle,
    geodesic_curve,
    geodesic_residual,
    match_tracks,
    radius_formula,
    reflection_residual,
)
from src.services.majorana import decompose, multiplicities
from src.services.npc import (
    default_g,
    dual_pair_npc,
    example_frame,
    example_grid,
    example_npc,
    linear_profile,
    npc_nd,
    random_profile,
    selfdual_npc,
)
from src.services.statespace import fs_distance
from src.services.transforms import conjugate_curve
from src.utils.serialization import (
    curve_from_payload,
    end_states_from_payload,
    matrix_to_wire,
    parse_coeffs,
    read_g_csv,
    read_json,
    state_from_payload,
    to_json,
    track_document,
    tracks_from_document,
    write_output,
)
from src.utils.svg import render_tracks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

# Mirror-image tracks must agree to this accuracy to count as reflection symmetric
MIRROR_TOL = 1e-8
# Grid points read from a g(s) file must match linspace(0, theta, N) this closely
GRID_TOL = 1e-9
# Fewest samples for the finite-difference geodesic residual
RESIDUAL_MIN_SAMPLES = 5


def _seed(args: argparse.Namespace, settings: Settings) -> int:
    return settings.seed if args.seed is None else args.seed


def _samples(args: argparse.Namespace, settings: Settings) -> int:
    return settings.samples if args.samples is None else args.samples


def _fit_circles(tracks: StarTrackSet) -> list[Optional[CircleFit]]:
    fits: list[Optional[CircleFit]] = []
    for index in range(tracks.n_tracks):
        try:
            fits.append(fit_circle(tracks.tracks[index]))
        except CollinearPointsError as e:
            logger.warning(f"No circle fit for track {index}: {e}")
            fits.append(None)
    return fits


def _residual_or_none(curve: StateCurve) -> Optional[float]:
    if curve.n_samples < RESIDUAL_MIN_SAMPLES:
        return None
    try:
        return geodesic_residual(curve)
    except CurveError as e:
        logger.info(f"Skipping geodesic residual: {e}")
        return None


def _mirror_test(tracks: StarTrackSet) -> dict[str, Any]:
    """Reflection of track 0 onto track 1 through the end-star plane"""
    normal = end_star_plane(tracks)
    residual = reflection_residual(tracks, 0, 1, normal)
    return {
        "plane_normal": normal.tolist(),
        "residual": residual,
        "symmetric": residual <= MIRROR_TOL,
    }


def cmd_decompose(args: argparse.Namespace, settings: Settings) -> int:
    """Print the Majorana constellation of a state given by --coeffs or a state file"""
    if args.coeffs is not None:
        values = parse_coeffs(args.coeffs)
        if args.normalize:
            values = values / np.linalg.norm(values)
        psi = PureState.from_amplitudes(values)
    elif args.state_file is not None:
        psi = state_from_payload(read_json(args.state_file))
    else:
        raise ValueError("decompose needs --coeffs or a state file")

    constellation = decompose(psi)
    document = constellation.model_dump()
    document["bloch"] = constellation.bloch_points().tolist()
    document["multiplicities"] = [
        {"point": point.tolist(), "count": count}
        for point, count in multiplicities(constellation)
    ]
    write_output(to_json(document), args.output)
    return EXIT_OK


def cmd_geodesic(args: argparse.Namespace, settings: Settings) -> int:
    """
    Sample a geodesic, split it into star tracks and fit circles to them

    Without --end-states the geodesic runs between the degenerate-star pair of the
    given dimension and angle. With --end-states the pair is first mapped to that
    form; tracks are reported in the canonical frame and the embedded curve is the
    geodesic between the original states.
    """
    n_samples = _samples(args, settings)
    frame = None
    if args.end_states is not None:
        psi1, psi2 = end_states_from_payload(read_json(args.end_states))
        spec, frame = canonical_geodesic(psi1, psi2, n_samples)
    else:
        spec = GeodesicSpec.canonical(args.dim, args.theta, n_samples)

    canonical_curve = geodesic_curve(spec)
    tracks = decompose_curve(canonical_curve)
    extras: dict[str, Any] = {}
    if spec.dim >= 3:
        oracle = analytic_tracks_3d(spec) if spec.dim == 3 else ansatz_tracks_nd(spec)
        permutation, gap = match_tracks(oracle, tracks)
        tracks = StarTrackSet(
            params=tracks.params,
            tracks=tracks.tracks[list(permutation)],
            pairing=oracle.pairing,
            collisions=tracks.collisions,
        )
        extras["closed_form_gap"] = gap
        extras["mirror_pairs"] = [list(pair) for pair in detect_dual_pairs(tracks)]
        extras["expected_radii"] = [
            radius_formula(spec.dim, k, spec.xi) for k in range(tracks.n_tracks)
        ]

    curve = canonical_curve
    if frame is not None:
        curve = conjugate_curve(frame, canonical_curve, "inverse")
    extras["length"] = curve_length(curve)
    extras["residual"] = _residual_or_none(curve)
    if frame is not None:
        extras["frame"] = matrix_to_wire(frame)
    extras["curve"] = curve.model_dump()

    document = track_document(tracks, spec.theta, _fit_circles(tracks))
    document.update(extras)
    logger.info(f"Geodesic dim={spec.dim} theta={spec.theta:.6g}: {tracks.n_tracks} tracks")
    write_output(to_json(document), args.output)
    return EXIT_OK


def _example_g(args: argparse.Namespace, theta: float, n_samples: int) -> np.ndarray:
    if args.g is None:
        return default_g(example_grid(theta, n_samples), theta)
    params, g = read_g_csv(args.g)
    expected = example_grid(theta, params.size)
    if np.abs(params - expected).max() > GRID_TOL:
        raise ProfileError(f"{args.g} must be sampled on linspace(0, theta, {params.size})")
    return g


def _profile(args: argparse.Namespace, theta: float, alpha: float) -> Optional[CurveProfile]:
    if args.profile is None:
        return None
    profile = CurveProfile.model_validate(read_json(args.profile))
    if abs(profile.alpha - alpha) > GRID_TOL:
        raise ProfileError(
            f"profile ends at alpha={profile.alpha:.12g}, theta={theta:.12g} needs {alpha:.12g}"
        )
    return profile


def _build_npc(
    args: argparse.Namespace, settings: Settings
) -> tuple[StateCurve, StarTrackSet, dict[str, Any]]:
    theta = args.theta
    n_samples = _samples(args, settings)
    example_grid(theta, n_samples)
    rng = np.random.default_rng(_seed(args, settings))
    extras: dict[str, Any] = {"kind": args.kind}

    if args.kind == "example":
        curve = example_npc(theta, _example_g(args, theta, n_samples), args.chi)
        tracks = decompose_curve(conjugate_curve(example_frame(theta), curve))
        extras["chi"] = args.chi
        return curve, tracks, extras

    if args.kind == "nd":
        power = args.dim - 1
        alpha = math.cos(theta) ** (1.0 / power)
        profiles = [random_profile(theta, n_samples, alpha, rng) for _ in range(power // 2)]
        if power % 2:
            profiles.append(linear_profile(theta, n_samples, alpha))
        curve = npc_nd(profiles, args.dim, overlap=math.cos(theta))
        return curve, decompose_curve(curve), extras

    alpha = math.sqrt(math.cos(theta))
    profile = _profile(args, theta, alpha)
    if args.kind == "dual":
        if profile is None:
            profile = random_profile(theta, n_samples, alpha, rng)
        curve = dual_pair_npc(profile)
    else:
        if profile is None:
            profile = linear_profile(theta, n_samples, alpha)
        curve = selfdual_npc(profile)
    extras["profile"] = profile.model_dump()
    return curve, decompose_curve(curve), extras


def cmd_npc(args: argparse.Namespace, settings: Settings) -> int:
    """Build a null phase curve, verify it and report its star tracks"""
    if args.kind == "nd" and (args.dim is None or args.dim < 3):
        raise ValueError("--kind nd needs --dim >= 3")
    curve, tracks, extras = _build_npc(args, settings)
    seed = _seed(args, settings)
    triples = settings.verify_triples if args.triples is None else args.triples
    report = verify_npc(curve, triples, seed)

    if tracks.n_tracks == 2:
        extras["mirror"] = _mirror_test(tracks)
    else:
        extras["mirror_pairs"] = [list(pair) for pair in detect_dual_pairs(tracks)]
    extras["length"] = curve_length(curve)
    extras["fs_distance"] = fs_distance(curve.state(0), curve.state(curve.n_samples - 1))
    extras["report"] = report.model_dump()
    extras["curve"] = curve.model_dump()

    document = track_document(tracks, args.theta, **extras)
    logger.info(f"NPC kind={args.kind}: pass={report.passed}")
    write_output(to_json(document), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    """Check Delta_3 > 0 over random triples of a curve file; exit 1 when it fails"""
    curve = curve_from_payload(read_json(args.curve_file))
    seed = _seed(args, settings)
    triples = settings.verify_triples if args.triples is None else args.triples
    report = verify_npc(curve, triples, seed)

    document = report.model_dump()
    document["length"] = curve_length(curve)
    document["fs_distance"] = fs_distance(curve.state(0), curve.state(curve.n_samples - 1))
    document["loop_phase"] = loop_phase(curve)
    document["geodesic_residual"] = _residual_or_none(curve)
    write_output(to_json(document), args.output)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_render(args: argparse.Namespace, settings: Settings) -> int:
    """Draw the tracks of a track file as an SVG figure"""
    tracks, _ = tracks_from_document(read_json(args.track_file))
    spec = RenderSpec(
        view=settings.view_direction if args.view is None else args.view,
        size_px=settings.render_size if args.size is None else args.size,
        show_sphere=not args.no_sphere,
    )
    write_output(render_tracks(tracks, spec, title=args.title), args.output)
    return EXIT_OK
