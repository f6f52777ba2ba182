"""
Deterministic SVG figures of star tracks on the Bloch sphere

Points are projected orthographically along the view direction. All coordinates
are written with a fixed number of decimals so identical inputs give identical
bytes.
"""

import logging
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from src.models.render import RenderSpec
from src.models.tracks import StarTrackSet

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" \
viewBox="0 0 {size} {size}">
<rect x="0" y="0" width="{size}" height="{size}" style="fill:#ffffff"/>
"""

POSTAMBLE = "</svg>\n"

HINT_SAMPLES = 181


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


class SVG:
    """Accumulates drawing commands in page coordinates"""

    def __init__(self, size: int):
        self.size = size
        self.commands: list[str] = []

    def circle(self, x: float, y: float, radius: float, stroke: str, fill: str = "none") -> None:
        self.commands.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" '
            f'style="fill:{fill};stroke:{stroke};stroke-width:1"/>'
        )

    def line(
        self, points: np.ndarray, color: str, width: float = 1.5, dashed: bool = False
    ) -> None:
        if len(points) < 2:
            return
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        dash = ";stroke-dasharray:4,3" if dashed else ""
        self.commands.append(
            f'<polyline points="{coords}" '
            f'style="fill:none;stroke:{color};stroke-width:{_fmt(width)}{dash}"/>'
        )

    def render(self) -> str:
        body = "".join(command + "\n" for command in self.commands)
        return PREAMBLE.format(size=self.size) + body + POSTAMBLE


class Projector:
    """Orthographic projection of unit-sphere points onto the page"""

    def __init__(self, spec: RenderSpec):
        view = spec.view_direction
        up = np.array([0.0, 0.0, 1.0])
        if abs(float(view @ up)) > 0.999:
            up = np.array([0.0, 1.0, 0.0])
        right = np.cross(up, view)
        right /= np.linalg.norm(right)
        self.right = right
        self.up = np.cross(view, right)
        self.view = view
        self.half = spec.size_px / 2.0
        self.scale = 0.45 * spec.size_px

    def page(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        x = self.half + self.scale * (pts @ self.right)
        y = self.half - self.scale * (pts @ self.up)
        return np.stack([x, y], axis=1)

    def facing(self, points: np.ndarray) -> np.ndarray:
        return np.atleast_2d(points) @ self.view >= 0.0


def _great_circle(normal: np.ndarray) -> np.ndarray:
    normal = normal / np.linalg.norm(normal)
    helper = np.array([1.0, 0.0, 0.0]) if abs(normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(normal, helper)
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)
    angles = np.linspace(0.0, 2.0 * np.pi, HINT_SAMPLES)
    return np.outer(np.cos(angles), u) + np.outer(np.sin(angles), v)


def _front_back_segments(
    projector: Projector, points: np.ndarray
) -> list[tuple[np.ndarray, bool]]:
    """Split a polyline into runs on the visible and hidden hemispheres"""
    facing = projector.facing(points)
    segments = []
    start = 0
    for i in range(1, len(points) + 1):
        if i == len(points) or facing[i] != facing[start]:
            end = min(i + 1, len(points))
            segments.append((projector.page(points[start:end]), bool(facing[start])))
            start = i
    return segments


def render_tracks(
    tracks: StarTrackSet, spec: RenderSpec, title: Optional[str] = None
) -> str:
    """
    Draw the sphere outline, equator and meridian hints, one polyline per track and
    markers at the first and last star of each track

    Returns:
        Complete SVG document
    """
    projector = Projector(spec)
    svg = SVG(spec.size_px)
    if spec.show_sphere:
        svg.circle(projector.half, projector.half, projector.scale, stroke="#888888")
        for normal in (np.array([0.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0])):
            for segment, front in _front_back_segments(projector, _great_circle(normal)):
                svg.line(segment, color="#cccccc", width=0.75, dashed=not front)

    for index in range(tracks.n_tracks):
        color = spec.color(index)
        for segment, front in _front_back_segments(projector, tracks.tracks[index]):
            svg.line(segment, color=color, width=2.0 if front else 1.0, dashed=not front)

    ends = np.concatenate([tracks.tracks[:, 0], tracks.tracks[:, -1]])
    for x, y in projector.page(ends):
        svg.circle(x, y, 3.0, stroke="#000000", fill="#000000")
    if title:
        svg.commands.append(
            '<text x="8" y="20" style="font-family:sans-serif;font-size:14px">'
            f"{escape(title)}</text>"
        )
    logger.debug(f"Rendered {tracks.n_tracks} tracks at {spec.size_px}px")
    return svg.render()
