"""
Tests for overlaps, gauge fixing and the qubit <-> Bloch maps
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.errors import DimensionMismatchError, NormalizationError, OrthogonalStatesError
from src.models.state import PureState, StateCurve
from src.services.statespace import (
    apply_unitary,
    bloch_to_star,
    fs_distance,
    gauge_align,
    horizontal_lift,
    inner,
    random_bloch,
    random_state,
    random_unitary,
    spinors_to_bloch,
    star_to_bloch,
)


class TestInner:
    def test_hermitian(self, rng):
        a, b = random_state(4, rng), random_state(4, rng)
        assert inner(a, b) == pytest.approx(inner(b, a).conjugate(), abs=1e-15)

    def test_antilinear_in_first_argument(self):
        a = PureState.from_amplitudes([1j / math.sqrt(2), 1 / math.sqrt(2)])
        b = PureState.basis(2, 0)
        assert inner(a, b) == pytest.approx(-1j / math.sqrt(2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            inner(PureState.basis(2), PureState.basis(3))


class TestGaugeAlign:
    def test_overlap_becomes_real_positive(self, rng):
        a, b = random_state(5, rng), random_state(5, rng)
        aligned = gauge_align(a, b)
        overlap = inner(a, aligned)
        assert overlap.imag == pytest.approx(0.0, abs=1e-15)
        assert overlap.real == pytest.approx(abs(inner(a, b)), abs=1e-15)

    def test_orthogonal_states(self):
        with pytest.raises(OrthogonalStatesError):
            gauge_align(PureState.basis(3, 0), PureState.basis(3, 2))


class TestFubiniStudy:
    def test_orthogonal_is_half_pi(self):
        assert fs_distance(PureState.basis(2, 0), PureState.basis(2, 1)) == pytest.approx(
            math.pi / 2
        )

    def test_phase_blind(self):
        psi = PureState.from_amplitudes([0.6, 0.8])
        assert fs_distance(psi, PureState(amps=-1j * psi.amps)) == pytest.approx(0.0, abs=1e-7)


class TestBlochMaps:
    def test_poles(self):
        north = bloch_to_star(np.array([0.0, 0.0, 1.0]))
        south = bloch_to_star(np.array([0.0, 0.0, -1.0]))
        assert (north.alpha, north.beta) == (1.0, 0.0)
        assert south.alpha == 0.0
        assert south.beta == pytest.approx(1.0)

    @settings(max_examples=200, deadline=None)
    @given(
        z=st.floats(min_value=-1.0, max_value=1.0),
        phi=st.floats(min_value=-math.pi, max_value=math.pi),
    )
    def test_star_of_bloch_vector_points_back(self, z, phi):
        rho = math.sqrt(max(0.0, 1.0 - z * z))
        point = np.array([rho * math.cos(phi), rho * math.sin(phi), z])
        point /= np.linalg.norm(point)
        np.testing.assert_allclose(star_to_bloch(bloch_to_star(point)), point, atol=1e-12)

    def test_rejects_non_unit_vector(self):
        with pytest.raises(NormalizationError):
            bloch_to_star(np.array([0.0, 0.0, 2.0]))

    def test_spinor_map_ignores_scale(self):
        alpha = np.array([1.0, 2.0j, 0.0])
        beta = np.array([1.0, 2.0, 3.0])
        points = spinors_to_bloch(alpha, beta)
        np.testing.assert_allclose(points[0], [1.0, 0.0, 0.0])
        np.testing.assert_allclose(points[1], [0.0, -1.0, 0.0])
        np.testing.assert_allclose(points[2], [0.0, 0.0, -1.0])
        np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)


class TestHorizontalLift:
    def test_consecutive_overlaps_real_positive(self, rng):
        params = np.linspace(0.0, 1.0, 20)
        phases = np.exp(1j * rng.uniform(0, 2 * math.pi, 20))
        amps = np.stack([np.cos(params), np.sin(params)], axis=1) * phases[:, None]
        lifted = horizontal_lift(StateCurve.from_arrays(params, amps))
        overlaps = np.einsum("ij,ij->i", lifted.amps[:-1].conj(), lifted.amps[1:])
        np.testing.assert_allclose(overlaps.imag, 0.0, atol=1e-14)
        assert np.all(overlaps.real > 0)
        np.testing.assert_allclose(lifted.amps[0], amps[0])


class TestRandom:
    def test_random_state_is_seeded(self):
        assert random_state(4, 7) == random_state(4, 7)

    def test_random_bloch_on_sphere(self, rng):
        points = random_bloch(50, rng)
        np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)

    def test_random_unitary(self, rng):
        unitary = random_unitary(5, rng)
        np.testing.assert_allclose(unitary @ unitary.conj().T, np.eye(5), atol=1e-12)

    def test_apply_unitary_dimension_check(self, rng):
        with pytest.raises(DimensionMismatchError):
            apply_unitary(random_unitary(3, rng), PureState.basis(2))
