"""
JSON and CSV codecs for the command-line file formats

Every writer is deterministic: identical inputs give byte-identical text.
"""

import csv
import json
import logging
import math
import re
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import numpy as np

from src.models.frame import FrameMap
from src.models.state import PureState, StateCurve
from src.models.tracks import CircleFit, StarTrackSet

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_PI_ANGLE = re.compile(r"^(?P<factor>[0-9.]*)\*?(?:pi|\u03c0)(?:/(?P<divisor>[0-9.]+))?$")


def to_json(payload: Any) -> str:
    """Pretty-printed JSON with a trailing newline; NaN and infinity are rejected"""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def write_output(text: str, path: Optional[PathLike] = None) -> None:
    """Write text to path, or to stdout when path is None"""
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {len(text)} bytes to {path}")


def read_json(path: PathLike) -> Any:
    """
    Load a JSON document

    Raises:
        ValueError: If the file is empty or not valid JSON
    """
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        raise ValueError(f"{path} is empty")
    return json.loads(text)


def parse_coeffs(text: str) -> np.ndarray:
    """
    Parse comma-separated amplitudes such as "0.6,0.8j,0"

    Raises:
        ValueError: If a token is not a number
    """
    tokens = [token.strip().replace(" ", "") for token in text.split(",")]
    if not tokens or any(not token for token in tokens):
        raise ValueError(f"malformed coefficient list: {text!r}")
    return np.array([complex(token) for token in tokens], dtype=complex)


def state_from_payload(payload: Any) -> PureState:
    return PureState.model_validate(payload)


def curve_from_payload(payload: Any) -> StateCurve:
    """Accept a bare curve document or one that embeds it under "curve\""""
    if isinstance(payload, dict) and "curve" in payload:
        payload = payload["curve"]
    return StateCurve.model_validate(payload)


def end_states_from_payload(payload: Any) -> tuple[PureState, PureState]:
    """{"psi1": state, "psi2": state} or a two-element list of states"""
    if isinstance(payload, dict) and "psi1" in payload and "psi2" in payload:
        return state_from_payload(payload["psi1"]), state_from_payload(payload["psi2"])
    if isinstance(payload, list) and len(payload) == 2:
        return state_from_payload(payload[0]), state_from_payload(payload[1])
    raise ValueError("end-state file must hold {\"psi1\": ..., \"psi2\": ...}")


def circle_to_wire(fit: CircleFit) -> dict[str, Any]:
    return {
        "center": fit.center.tolist(),
        "normal": fit.normal.tolist(),
        "radius": fit.radius,
        "max_residual": fit.max_residual,
    }


def track_document(
    tracks: StarTrackSet,
    theta: float,
    circles: Iterable[Optional[CircleFit]] = (),
    **extras: Any,
) -> dict[str, Any]:
    """
    Track JSON: dim, theta, samples, s, tracks, pairs, circles, collisions and extras

    A track without a circle fit has null in its circles slot.
    """
    document: dict[str, Any] = {
        "dim": tracks.dim,
        "theta": theta,
        "samples": int(tracks.params.size),
        "s": tracks.params.tolist(),
        "tracks": tracks.tracks.tolist(),
        "pairs": [list(pair) for pair in tracks.pairing],
        "circles": [None if fit is None else circle_to_wire(fit) for fit in circles],
        "collisions": list(tracks.collisions),
    }
    document.update(extras)
    return document


def tracks_from_document(document: Any) -> tuple[StarTrackSet, float]:
    """
    Rebuild a StarTrackSet from track JSON

    Raises:
        ValueError: If required keys are missing or inconsistent
    """
    if not isinstance(document, dict) or "tracks" not in document:
        raise ValueError("track document needs a \"tracks\" array")
    points = np.asarray(document["tracks"], dtype=float)
    if points.ndim != 3:
        raise ValueError(f"tracks must be a (k, N, 3) array, got shape {points.shape}")
    params = document.get("s")
    if params is None:
        params = np.linspace(0.0, float(document.get("theta", 1.0)), points.shape[1])
    if "dim" in document and int(document["dim"]) != points.shape[0] + 1:
        raise ValueError(f"dim {document['dim']} does not match {points.shape[0]} tracks")
    pairing = tuple((int(i), int(j)) for i, j in document.get("pairs", []))
    track_set = StarTrackSet(
        params=params,
        tracks=points,
        pairing=pairing,
        collisions=tuple(int(i) for i in document.get("collisions", [])),
    )
    return track_set, float(document.get("theta", float(track_set.params[-1])))


def matrix_to_wire(frame: FrameMap) -> dict[str, Any]:
    """Frame unitary as row-major {"n", "re", "im"}"""
    return {
        "n": frame.dim,
        "re": frame.unitary.real.tolist(),
        "im": frame.unitary.imag.tolist(),
    }


def read_g_csv(path: PathLike) -> tuple[np.ndarray, np.ndarray]:
    """
    Read sampled g(s) from a CSV file with header "s,g"

    Raises:
        ValueError: If the header is wrong, a value is not numeric or the file is empty
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["s", "g"]:
            raise ValueError(f"{path} must start with the header 's,g'")
        rows = [(float(row["s"]), float(row["g"])) for row in reader]
    if len(rows) < 2:
        raise ValueError(f"{path} needs at least 2 samples")
    data = np.array(rows)
    return data[:, 0], data[:, 1]


def parse_angle(text: str) -> float:
    """
    Parse an angle in radians: a plain number or a multiple of pi such as "pi/3",
    "2pi/5" or "π/3"

    Raises:
        ValueError: If the text is neither
    """
    compact = text.strip().replace(" ", "").lower()
    match = _PI_ANGLE.match(compact)
    if match is None:
        return float(compact)
    factor = float(match.group("factor")) if match.group("factor") else 1.0
    divisor = float(match.group("divisor")) if match.group("divisor") else 1.0
    if divisor == 0.0:
        raise ValueError(f"division by zero in angle {text!r}")
    return factor * math.pi / divisor


def parse_vector(text: str) -> tuple[float, float, float]:
    """Parse "x,y,z" into three floats"""
    parts = [float(part) for part in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated components, got {text!r}")
    return parts[0], parts[1], parts[2]
