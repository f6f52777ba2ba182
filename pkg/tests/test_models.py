"""
Tests for the value types in src.models
"""

import math

import numpy as np
import pytest

from src.models.bargmann import VerificationReport
from src.models.errors import (
    CurveError,
    DimensionMismatchError,
    DomainError,
    NormalizationError,
    OrthogonalStatesError,
    ProfileError,
    StateSpaceError,
)
from src.models.frame import FrameMap
from src.models.polynomial import MajoranaPolynomial
from src.models.profile import CurveProfile
from src.models.render import RenderSpec
from src.models.state import Constellation, PureState, Star, StateCurve
from src.models.tracks import GeodesicSpec, StarTrackSet, symmetric_power_amplitudes


class TestErrors:
    def test_domain_errors_are_value_errors(self):
        assert issubclass(StateSpaceError, ValueError)
        assert issubclass(ProfileError, StateSpaceError)


class TestPureState:
    def test_basis(self):
        psi = PureState.basis(4, 2)
        assert psi.dim == 4
        np.testing.assert_array_equal(psi.amps, [0, 0, 1, 0])

    def test_small_norm_error_is_renormalized(self):
        psi = PureState.from_amplitudes([1.0 + 1e-10, 0.0])
        assert np.linalg.norm(psi.amps) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            PureState.from_amplitudes([1.0, 1.0])

    def test_rejects_dimension_one(self):
        with pytest.raises(DimensionMismatchError):
            PureState.from_amplitudes([1.0])

    def test_rejects_non_finite(self):
        with pytest.raises(NormalizationError):
            PureState.from_amplitudes([math.nan, 1.0])

    def test_amplitudes_are_read_only(self):
        psi = PureState.basis(2)
        with pytest.raises(ValueError):
            psi.amps[0] = 0.0

    def test_wire_format(self):
        psi = PureState.from_amplitudes([0.6, 0.8j])
        wire = psi.model_dump()
        assert wire == {"dim": 2, "re": [0.6, 0.0], "im": [0.0, 0.8]}
        assert PureState.model_validate(wire) == psi

    def test_wire_dim_mismatch(self):
        with pytest.raises(ValueError):
            PureState.model_validate({"dim": 3, "re": [1.0, 0.0], "im": [0.0, 0.0]})

    def test_wire_rejects_bad_norm(self):
        with pytest.raises(ValueError):
            PureState.model_validate({"re": [1.0, 1.0]})


class TestStar:
    def test_phase_chart_makes_alpha_real(self):
        star = Star(alpha=1j / math.sqrt(2), beta=1j / math.sqrt(2))
        assert star.alpha == pytest.approx(1 / math.sqrt(2))
        assert star.beta == pytest.approx(1 / math.sqrt(2))

    def test_south_pole_chart(self):
        star = Star(alpha=0.0, beta=-1j)
        assert star.alpha == 0
        assert star.beta == pytest.approx(1.0)
        np.testing.assert_allclose(star.bloch, [0.0, 0.0, -1.0])

    def test_bloch_of_plus_state(self):
        star = Star(alpha=1 / math.sqrt(2), beta=1 / math.sqrt(2))
        np.testing.assert_allclose(star.bloch, [1.0, 0.0, 0.0], atol=1e-15)

    def test_wire_pairs(self):
        star = Star.model_validate({"alpha": [0.0, 1.0], "beta": [0.0, 0.0]})
        assert star.alpha == pytest.approx(1.0)
        assert star.model_dump() == {"alpha": [1.0, 0.0], "beta": [0.0, 0.0]}


class TestConstellation:
    def test_stars_sorted_by_height(self):
        north = Star(alpha=1.0, beta=0.0)
        south = Star(alpha=0.0, beta=1.0)
        constellation = Constellation(stars=(north, south))
        assert constellation.stars == (south, north)
        assert constellation.dim == 3
        assert len(constellation) == 2

    def test_order_independent_equality(self):
        a = Star(alpha=0.8, beta=0.6)
        b = Star(alpha=0.6, beta=0.8j)
        assert Constellation(stars=(a, b)) == Constellation(stars=(b, a))

    def test_wire_dim_mismatch(self):
        wire = Constellation(stars=(Star(alpha=1.0, beta=0.0),)).model_dump()
        wire["dim"] = 4
        with pytest.raises(ValueError):
            Constellation.model_validate(wire)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Constellation(stars=())


class TestStateCurve:
    def test_from_states(self):
        states = [PureState.basis(2, 0), PureState.from_amplitudes([0.6, 0.8])]
        curve = StateCurve.from_states([0.0, 1.0], states)
        assert curve.n_samples == 2
        assert curve.dim == 2
        assert curve.state(1) == states[1]

    def test_params_must_increase(self):
        with pytest.raises(CurveError):
            StateCurve.from_arrays([0.0, 0.0], [[1.0, 0.0], [1.0, 0.0]])

    def test_consecutive_orthogonal_rejected(self):
        with pytest.raises(OrthogonalStatesError):
            StateCurve.from_arrays([0.0, 1.0], [[1.0, 0.0], [0.0, 1.0]])

    def test_wire_input_is_validated(self):
        with pytest.raises(ValueError):
            StateCurve.model_validate({"s": [0.0, 1.0], "re": [[1.0, 0.0], [0.0, 1.0]]})

    def test_wire_round_trip(self):
        curve = StateCurve.from_arrays([0.0, 0.5], [[1.0, 0.0], [0.8, 0.6j]])
        assert StateCurve.model_validate(curve.model_dump()) == curve


class TestMajoranaPolynomial:
    def test_degree_deficit(self):
        poly = MajoranaPolynomial(coeffs=[0.0, 1e-20, 1.0, 2.0])
        assert poly.dim == 4
        assert poly.degree_deficit == 2
        np.testing.assert_array_equal(poly.effective, [1.0, 2.0])

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            MajoranaPolynomial(coeffs=[0.0, 0.0])


class TestGeodesicSpec:
    def test_canonical_overlap(self, qutrit_spec):
        assert qutrit_spec.xi == pytest.approx(0.5, abs=1e-14)
        assert qutrit_spec.theta == pytest.approx(math.pi / 3, abs=1e-14)
        assert qutrit_spec.params()[-1] == pytest.approx(math.pi / 3)

    @pytest.mark.parametrize("theta", [0.0, math.pi / 2, -0.1, 2.0])
    def test_canonical_theta_range(self, theta):
        with pytest.raises(DomainError):
            GeodesicSpec.canonical(dim=3, theta=theta, n_samples=11)

    def test_from_states_gauge_aligns(self):
        psi1 = PureState.basis(2, 0)
        psi2 = PureState.from_amplitudes([0.6j, 0.8])
        spec = GeodesicSpec.from_states(psi1, psi2, 5)
        assert complex(np.vdot(spec.psi1.amps, spec.psi2.amps)) == pytest.approx(0.6)

    def test_orthogonal_end_states(self):
        with pytest.raises(OrthogonalStatesError):
            GeodesicSpec.from_states(PureState.basis(2, 0), PureState.basis(2, 1), 5)

    def test_identical_end_states(self):
        psi = PureState.from_amplitudes([0.6, 0.8])
        with pytest.raises(DomainError):
            GeodesicSpec.from_states(psi, PureState(amps=1j * psi.amps), 5)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            GeodesicSpec.from_states(PureState.basis(2, 0), PureState.basis(3, 0), 5)

    def test_symmetric_power_amplitudes_are_normalized(self):
        amps = symmetric_power_amplitudes(0.6, 0.8j, 5)
        assert np.linalg.norm(amps) == pytest.approx(1.0, abs=1e-14)
        assert amps[0] == pytest.approx(0.6**5)


class TestStarTrackSet:
    def test_shapes_checked(self):
        with pytest.raises(ValueError):
            StarTrackSet(params=[0.0, 1.0], tracks=np.zeros((2, 3, 3)))

    def test_pairing_indices_checked(self):
        with pytest.raises(ValueError):
            StarTrackSet(params=[0.0, 1.0], tracks=np.zeros((2, 2, 3)), pairing=((0, 2),))

    def test_self_dual(self):
        tracks = StarTrackSet(
            params=[0.0, 1.0], tracks=np.zeros((3, 2, 3)), pairing=((0, 0), (1, 2))
        )
        assert tracks.dim == 4
        assert tracks.self_dual == 0
        assert tracks.with_pairing(((0, 2),)).self_dual is None


class TestCurveProfile:
    def test_boundary_conditions(self):
        params = np.linspace(0.0, 1.0, 5)
        alpha = 0.8
        eta = np.linspace(0.0, 2.0 * math.acos(alpha), 5)
        profile = CurveProfile.from_samples(params, eta, np.zeros(5), alpha)
        assert profile.eta_end == pytest.approx(2.0 * math.acos(alpha))
        assert profile.n_samples == 5

    def test_eta_must_start_at_zero(self):
        params = np.linspace(0.0, 1.0, 3)
        with pytest.raises(ProfileError):
            CurveProfile.from_samples(params, [0.1, 0.5, 2 * math.acos(0.8)], np.zeros(3), 0.8)

    def test_gamma_must_vanish_at_ends(self):
        params = np.linspace(0.0, 1.0, 3)
        eta = [0.0, 0.5, 2 * math.acos(0.8)]
        with pytest.raises(ProfileError):
            CurveProfile.from_samples(params, eta, [0.0, 0.1, 0.2], 0.8)

    def test_wire_alpha_defaults_from_eta(self):
        eta_end = 2 * math.acos(0.7)
        profile = CurveProfile.model_validate(
            {"s": [0.0, 1.0], "eta": [0.0, eta_end], "gamma": [0.0, 0.0]}
        )
        assert profile.alpha == pytest.approx(0.7)
        assert set(profile.model_dump()) == {"s", "eta", "gamma", "alpha"}


class TestFrameMap:
    def test_rejects_non_unitary(self):
        psi = PureState.basis(2, 0)
        with pytest.raises(ValueError):
            FrameMap(unitary=2 * np.eye(2), source=(psi, psi), canonical=(psi, psi))

    def test_rejects_wrong_mapping(self):
        a, b = PureState.basis(2, 0), PureState.basis(2, 1)
        with pytest.raises(ValueError):
            FrameMap(unitary=np.eye(2), source=(a, a), canonical=(b, b))

    def test_inverse(self):
        a, b = PureState.basis(2, 0), PureState.basis(2, 1)
        swap = np.array([[0, 1], [1, 0]], dtype=complex)
        frame = FrameMap(unitary=swap, source=(a, b), canonical=(b, a))
        np.testing.assert_allclose(frame.inverse @ frame.unitary, np.eye(2))
        assert PureState.from_amplitudes(frame.unitary @ a.amps) == b


class TestRenderSpec:
    def test_view_normalized(self):
        spec = RenderSpec(view=(0.0, 0.0, 2.0))
        np.testing.assert_allclose(spec.view_direction, [0.0, 0.0, 1.0])

    def test_zero_view_rejected(self):
        with pytest.raises(ValueError):
            RenderSpec(view=(0.0, 0.0, 0.0))

    def test_palette_cycles(self):
        spec = RenderSpec(track_colors=("#000000", "#ffffff"))
        assert spec.color(3) == "#ffffff"


class TestVerificationReport:
    def test_wire_uses_pass_key(self):
        report = VerificationReport(passed=True, max_abs_im=0.0, min_re=0.5, n_triples=3, seed=1)
        wire = report.model_dump()
        assert list(wire) == ["pass", "max_abs_im", "min_re", "n_triples", "seed"]
        assert VerificationReport.model_validate(wire) == report
