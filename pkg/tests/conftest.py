import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_gqsd(rng, t3=None, zero_phases=(), n_phases=5):
    """Random device spec; xi6 = 0 unless n_phases = 6."""
    from qscissors.network import GqsdSpec

    t = rng.random(5)
    if t3 is not None:
        t[2] = t3
    x = np.zeros(6)
    x[:n_phases] = rng.uniform(-np.pi, np.pi, n_phases)
    for k in zero_phases:
        x[k] = 0.0
    return GqsdSpec(tuple(t), tuple(x))


def align_phase(reference, values):
    """Rotate `values` by one global phase to best match `reference`."""
    reference = np.asarray(reference)
    values = np.asarray(values)
    i = int(np.argmax(np.abs(reference)))
    if abs(values[i]) == 0.0:
        return values
    phase = reference[i] / values[i]
    return values * (phase / abs(phase))
