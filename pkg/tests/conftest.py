"""
Shared pytest configuration.
"""

import numpy as np
import pytest


@pytest.fixture(autouse=True)
def seeded_numpy():
    """Seed the legacy numpy generator for every test."""
    np.random.seed(42)
    yield
