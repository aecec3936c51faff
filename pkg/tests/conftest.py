"""
Shared fixtures for the orthoscheme tests
"""

import numpy as np
import pytest

from models.orthoscheme import FamilyParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def lambert_family():
    """r > 1 family whose maximum sits on the ideal-vertex boundary (C < 1)"""
    return FamilyParams(2.0, 1.3)


@pytest.fixture
def interior_root_family():
    """r > 1 family whose maximum lies strictly below h_b (C > 1)"""
    return FamilyParams(1.05, 0.8)


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.delenv("ORTHO_SEED", raising=False)
    return monkeypatch
