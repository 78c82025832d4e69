import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spinosc.classical import PhasePoint


def random_phase_points(count, seed=12345, box=2.0):
    """Deterministic corpus of valid phase points (uniform sphere x box plane)."""
    rng = np.random.default_rng(seed)
    sphere = rng.normal(size=(count, 3))
    sphere /= np.linalg.norm(sphere, axis=1)[:, None]
    plane = rng.uniform(-box, box, size=(count, 2))
    return [
        PhasePoint(x, y, z, u, v) for (x, y, z), (u, v) in zip(sphere, plane)
    ]


@pytest.fixture(scope="session")
def phase_corpus():
    return random_phase_points(1000)
