"""Chirped Gaussian pulse: envelope, dispersion parameter, instantaneous frequency.

Units are femtoseconds and fs^-1 throughout, matching the encoded-number
examples in this package.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ChirpedPulse"]


@dataclass(frozen=True)
class ChirpedPulse:
    """Gaussian pulse of bandwidth delta_omega with quadratic spectral phase phi2.

    omega_L : carrier frequency (fs^-1)
    delta_omega : bandwidth (fs^-1), > 0
    phi2 : second-order spectral phase (fs^2)
    e0 : field amplitude (arbitrary units)
    """

    omega_L: float
    delta_omega: float
    phi2: float = 0.0
    e0: float = 1.0

    def __post_init__(self):
        if not self.delta_omega > 0.0:
            raise ValueError("delta_omega must be > 0")
        if not math.isfinite(self.dispersion_a):
            raise ValueError("delta_omega^2 * phi2 must be finite")
        if not self.e0 > 0.0:
            raise ValueError("e0 must be > 0")

    @property
    def dispersion_a(self):
        """Dimensionless second-order dispersion a = delta_omega^2 phi2."""
        return self.delta_omega ** 2 * self.phi2

    @property
    def f0(self):
        """Complex peak amplitude sqrt((1+ia)/(1+a^2)), principal branch.

        Re(1+ia) = 1 > 0 keeps the root on the principal branch, so f0 is
        continuous through a = 0 and |f0|^2 = 1/sqrt(1+a^2).
        """
        a = self.dispersion_a
        return cmath.sqrt((1.0 + 1j * a) / (1.0 + a * a))

    def envelope(self, t):
        """f(t) = f0 exp[-(delta_omega f0 t)^2 / 2]; accepts scalars or arrays."""
        f0 = self.f0
        arg = self.delta_omega * f0 * np.asarray(t, dtype=np.float64)
        out = f0 * np.exp(-0.5 * arg * arg)
        if np.isscalar(t) or np.ndim(t) == 0:
            return complex(out)
        return out

    def instantaneous_frequency(self, t):
        """nu(t) = a delta_omega^2 t / (1 + a^2); linear sweep, sign of phi2."""
        a = self.dispersion_a
        nu = a * self.delta_omega ** 2 * np.asarray(t, dtype=np.float64) / (1.0 + a * a)
        if np.isscalar(t) or np.ndim(t) == 0:
            return float(nu)
        return nu

    @property
    def duration(self):
        """1/e half-width of |f(t)|: sqrt(1+a^2)/delta_omega (fs)."""
        a = self.dispersion_a
        return math.sqrt(1.0 + a * a) / self.delta_omega

    def with_phi2(self, phi2):
        """Copy with a different quadratic spectral phase."""
        return ChirpedPulse(self.omega_L, self.delta_omega, float(phi2), self.e0)
