"""
Shared fixtures
"""

import math
from pathlib import Path

import numpy as np
import pytest

from src.config.settings import get_settings
from src.models.tracks import GeodesicSpec, StarTrackSet


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Settings are read from a clean environment in every test"""
    for name in (
        "MSR_SEED",
        "MSR_VERIFY_TRIPLES",
        "MSR_SAMPLES",
        "MSR_LOG_LEVEL",
        "MSR_RENDER_SIZE",
        "MSR_RENDER_VIEW",
    ):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def qutrit_spec():
    return GeodesicSpec.canonical(dim=3, theta=math.pi / 3, n_samples=401)


@pytest.fixture
def mirror_tracks():
    """Two three-sample tracks mirrored through the xz plane, all facing +x"""
    first = [[0.0, 0.0, 1.0], [0.6, 0.8, 0.0], [0.8, 0.0, -0.6]]
    second = [[0.0, 0.0, 1.0], [0.6, -0.8, 0.0], [0.8, 0.0, -0.6]]
    return StarTrackSet(params=[0.0, 0.5, 1.0], tracks=[first, second], pairing=((0, 1),))


@pytest.fixture
def golden_svg():
    return Path(__file__).parent / "data" / "mirror_tracks.svg"
