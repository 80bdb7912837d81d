import math
import sys
from pathlib import Path

import pytest

try:
    import gaussfactor  # noqa: F401
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gaussfactor import ChirpedPulse, FloquetSystem, TptSystem  # noqa: E402


@pytest.fixture(scope="session")
def n15_system():
    """Two-photon ladder for N = 15, reference-figure parameters."""
    pulse = ChirpedPulse(omega_L=2.35, delta_omega=0.1525, phi2=-465424.0)
    return TptSystem(
        delta=0.0225, big_delta=0.003, m_lower=11, m_upper=11, pulse=pulse
    )


def make_floquet_21(phi):
    big_delta = 0.003
    pulse = ChirpedPulse(omega_L=2.35, delta_omega=12.71 * big_delta, phi2=0.0)
    return FloquetSystem(
        delta=21 * big_delta,
        big_delta=big_delta,
        kappa=2.0 * math.pi * 100 + math.pi / 4.0,
        phi=phi,
        pulse=pulse,
    )


@pytest.fixture(scope="session")
def n21_system():
    """Floquet ladder for N = 21, phi = pi/2 (peak readout)."""
    return make_floquet_21(math.pi / 2.0)


@pytest.fixture(scope="session")
def n21_system_phi0():
    """Floquet ladder for N = 21, phi = 0 (zero readout)."""
    return make_floquet_21(0.0)


@pytest.fixture(scope="session")
def n105_system():
    """Floquet ladder for N = 105, discrete line readout."""
    big_delta = 0.003
    pulse = ChirpedPulse(omega_L=2.35, delta_omega=90.0 * big_delta, phi2=0.0)
    return FloquetSystem(
        delta=105 * big_delta,
        big_delta=big_delta,
        kappa=2.0 * math.pi * 1e5 + math.pi / 4.0,
        phi=math.pi / 2.0,
        pulse=pulse,
    )


@pytest.fixture(scope="session")
def n15_trace(n15_system):
    import numpy as np

    from gaussfactor import SignalTrace, tpt_amplitude_grid

    xi = np.arange(0, 8 * 200 + 1) / 200.0
    amp = tpt_amplitude_grid(n15_system, xi)
    return SignalTrace(xi, np.abs(amp) ** 2, "tpt", 15).normalize()
