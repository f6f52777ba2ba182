"""
Tests for the file codecs and the SVG renderer
"""

import math
from xml.etree import ElementTree

import numpy as np
import pytest

from src.models.frame import FrameMap
from src.models.render import RenderSpec
from src.models.state import PureState
from src.services.geodesic import analytic_tracks_3d, fit_circle
from src.services.npc import example_frame
from src.utils.serialization import (
    curve_from_payload,
    end_states_from_payload,
    matrix_to_wire,
    parse_angle,
    parse_coeffs,
    parse_vector,
    read_g_csv,
    read_json,
    to_json,
    track_document,
    tracks_from_document,
    write_output,
)
from src.utils.svg import render_tracks


class TestParsers:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("pi/3", math.pi / 3),
            ("2pi/5", 2 * math.pi / 5),
            ("π/3", math.pi / 3),
            ("PI", math.pi),
            ("0.5", 0.5),
            (" 1e-2 ", 0.01),
        ],
    )
    def test_parse_angle(self, text, expected):
        assert parse_angle(text) == pytest.approx(expected)

    @pytest.mark.parametrize("text", ["pi/0", "third", ""])
    def test_parse_angle_rejects(self, text):
        with pytest.raises(ValueError):
            parse_angle(text)

    def test_parse_vector(self):
        assert parse_vector("1, 0.5,-2") == (1.0, 0.5, -2.0)
        with pytest.raises(ValueError):
            parse_vector("1,2")

    def test_parse_coeffs(self):
        np.testing.assert_array_equal(parse_coeffs("0.6, 0.8j,0"), [0.6, 0.8j, 0.0])
        with pytest.raises(ValueError):
            parse_coeffs("1,,0")
        with pytest.raises(ValueError):
            parse_coeffs("1,x")


class TestJson:
    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            to_json({"x": float("nan")})

    def test_write_and_read(self, tmp_path):
        path = tmp_path / "out.json"
        write_output(to_json({"a": [1, 2]}), path)
        assert read_json(path) == {"a": [1, 2]}

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("   \n")
        with pytest.raises(ValueError):
            read_json(path)

    def test_embedded_curve(self):
        payload = {"curve": {"s": [0.0, 1.0], "re": [[1.0, 0.0], [0.6, 0.8]]}}
        curve = curve_from_payload(payload)
        assert curve.n_samples == 2
        np.testing.assert_allclose(curve.amps.imag, 0.0)

    def test_end_states(self):
        state = {"re": [1.0, 0.0, 0.0], "im": [0.0, 0.0, 0.0]}
        other = {"re": [0.6, 0.8, 0.0], "im": [0.0, 0.0, 0.0]}
        psi1, psi2 = end_states_from_payload({"psi1": state, "psi2": other})
        assert psi1 == PureState.basis(3, 0)
        assert end_states_from_payload([state, other])[1] == psi2
        with pytest.raises(ValueError):
            end_states_from_payload({"psi1": state})

    def test_matrix_wire(self):
        a, b = PureState.basis(2, 0), PureState.basis(2, 1)
        swap = np.array([[0, 1], [1, 0]], dtype=complex)
        assert matrix_to_wire(FrameMap(unitary=swap, source=(a, b), canonical=(b, a))) == {
            "n": 2,
            "re": [[0.0, 1.0], [1.0, 0.0]],
            "im": [[0.0, 0.0], [0.0, 0.0]],
        }
        frame = example_frame(math.pi / 3)
        wire = matrix_to_wire(frame)
        matrix = np.array(wire["re"]) + 1j * np.array(wire["im"])
        np.testing.assert_array_equal(matrix, frame.unitary)


class TestGCsv:
    def test_read(self, tmp_path):
        path = tmp_path / "g.csv"
        path.write_text("s,g\n0.0,1.0\n0.5,0.9\n1.0,1.0\n")
        params, g = read_g_csv(path)
        np.testing.assert_array_equal(params, [0.0, 0.5, 1.0])
        np.testing.assert_array_equal(g, [1.0, 0.9, 1.0])

    def test_header_required(self, tmp_path):
        path = tmp_path / "g.csv"
        path.write_text("x,y\n0.0,1.0\n1.0,1.0\n")
        with pytest.raises(ValueError):
            read_g_csv(path)

    def test_too_short(self, tmp_path):
        path = tmp_path / "g.csv"
        path.write_text("s,g\n0.0,1.0\n")
        with pytest.raises(ValueError):
            read_g_csv(path)


class TestTrackDocument:
    def test_round_trip(self, qutrit_spec):
        tracks = analytic_tracks_3d(qutrit_spec).with_pairing(((0, 1),))
        circles = [fit_circle(tracks.tracks[0]), None]
        document = track_document(tracks, qutrit_spec.theta, circles, note="x")
        assert document["circles"][1] is None
        assert document["circles"][0]["radius"] == pytest.approx(math.sqrt(0.5), abs=1e-9)
        assert document["note"] == "x"
        rebuilt, theta = tracks_from_document(document)
        assert rebuilt == tracks
        assert theta == pytest.approx(math.pi / 3)

    def test_dim_must_match(self, qutrit_spec):
        document = track_document(analytic_tracks_3d(qutrit_spec), qutrit_spec.theta)
        document["dim"] = 5
        with pytest.raises(ValueError):
            tracks_from_document(document)

    def test_missing_tracks(self):
        with pytest.raises(ValueError):
            tracks_from_document({"theta": 1.0})


class TestRender:
    def test_deterministic(self, qutrit_spec):
        tracks = analytic_tracks_3d(qutrit_spec)
        spec = RenderSpec(view=(1.0, 0.6, 0.4), size_px=320)
        first = render_tracks(tracks, spec, title="qutrit")
        assert first == render_tracks(tracks, spec, title="qutrit")
        assert first.startswith("<?xml")
        assert first.rstrip().endswith("</svg>")
        assert "qutrit" in first

    def test_sphere_toggle(self, qutrit_spec):
        tracks = analytic_tracks_3d(qutrit_spec)
        with_sphere = render_tracks(tracks, RenderSpec())
        without = render_tracks(tracks, RenderSpec(show_sphere=False))
        assert len(without) < len(with_sphere)
        assert "#888888" not in without

    def test_track_colors(self, qutrit_spec):
        tracks = analytic_tracks_3d(qutrit_spec)
        rendered = render_tracks(tracks, RenderSpec(track_colors=("#123456",)))
        assert "#123456" in rendered

    def test_matches_golden_file(self, mirror_tracks, golden_svg):
        spec = RenderSpec(view=(1.0, 0.0, 0.0), size_px=200, show_sphere=False)
        rendered = render_tracks(mirror_tracks, spec, title="a<b & c")
        assert rendered == golden_svg.read_text(encoding="utf-8")
        assert rendered.count("<polyline") == 2

    def test_title_is_escaped(self, qutrit_spec):
        rendered = render_tracks(analytic_tracks_3d(qutrit_spec), RenderSpec(), title="a<b & c")
        assert "a&lt;b &amp; c" in rendered
        root = ElementTree.fromstring(rendered.encode("utf-8"))
        assert root.find("{http://www.w3.org/2000/svg}text").text == "a<b & c"
