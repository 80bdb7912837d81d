"""Two-photon ladder scheme: erfc weight factors and the continuous Gauss sum.

The ladder encodes N = 2 delta / Delta. Scanning the quadratic spectral
phase phi2 scans the dimensionless chirp xi = delta Delta phi2 / pi, and the
excited-state amplitude is the weighted sum
sum_m w_m exp[2 pi i (m + m^2/N) xi] over the intermediate manifold.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import gauss_sums
from ._backend import kernels
from .analysis import SignalTrace
from .errors import EncodingError
from .pulse import ChirpedPulse

__all__ = [
    "TptSystem",
    "encode_n",
    "dimensionless_chirp",
    "phi2_for_chirp",
    "tpt_weight",
    "tpt_weights",
    "tpt_amplitude",
    "tpt_amplitude_grid",
    "rescale_trace",
]

_INT_TOL = 1e-9


def encode_n(delta, big_delta):
    """N = 2 delta / Delta; raises EncodingError unless that is an integer."""
    ratio = 2.0 * delta / big_delta
    n = round(ratio)
    if n < 1 or abs(ratio - n) > _INT_TOL * max(1.0, abs(ratio)):
        raise EncodingError(
            f"2*delta/Delta = {ratio!r} is not a positive integer"
        )
    return int(n)


def dimensionless_chirp(delta, big_delta, phi2):
    """xi = delta Delta phi2 / pi."""
    return delta * big_delta * phi2 / math.pi


def phi2_for_chirp(delta, big_delta, xi):
    """Quadratic spectral phase realizing a given xi."""
    return math.pi * xi / (delta * big_delta)


@dataclass(frozen=True)
class TptSystem:
    """Harmonic intermediate manifold driven by a chirped two-photon transition.

    delta, big_delta : offset of the central state and manifold spacing (fs^-1)
    m_lower, m_upper : manifold index range [-m_lower, m_upper] (both > 0)
    rabi_product : product Omega_em Omega_mg (fs^-2); a constant or a
        per-m sequence covering the index range
    pulse : the driving chirped pulse
    """

    delta: float
    big_delta: float
    m_lower: int
    m_upper: int
    pulse: ChirpedPulse
    rabi_product: object = 1.0

    def __post_init__(self):
        n = encode_n(self.delta, self.big_delta)
        d = self.m_lower + self.m_upper + 1
        if not (n <= d <= 2 * n):
            raise ValueError(
                f"manifold dimension D={d} outside [N, 2N] = [{n}, {2*n}]"
            )
        if not self.m_lower > n / 2:
            raise ValueError(f"m_lower={self.m_lower} must exceed N/2 = {n/2}")
        rp = self.rabi_product
        if np.ndim(rp) == 1 and len(rp) != d:
            raise ValueError("per-m rabi_product must have D entries")

    @property
    def n_encoded(self):
        return encode_n(self.delta, self.big_delta)

    @property
    def indices(self):
        return np.arange(-self.m_lower, self.m_upper + 1)

    def rabi_for(self, m):
        rp = self.rabi_product
        if np.ndim(rp) == 0:
            return complex(rp)
        return complex(rp[int(m) + self.m_lower])

    def offset(self, m):
        """delta_m = delta + m Delta."""
        return self.delta + m * self.big_delta


def tpt_weight(sys, m):
    """Weight of the path through intermediate state m.

    w_m = -(pi/2) (Omega_em Omega_mg / delta_omega^2)
          * erfc(i u sqrt(1 - i a)) * exp(-u^2),  u = delta_m / delta_omega.

    Evaluated through the scaled function w so the erfc growth and the
    Gaussian cutoff cancel analytically; no overflow at any chirp.
    """
    m = int(m)
    if not -sys.m_lower <= m <= sys.m_upper:
        raise ValueError(f"m={m} outside [-{sys.m_lower}, {sys.m_upper}]")
    dw = sys.pulse.delta_omega
    a = sys.pulse.dispersion_a
    u = sys.offset(m) / dw
    prefactor = -(math.pi / 2.0) * sys.rabi_for(m) / dw ** 2
    return prefactor * _erfc_gauss_product(u, a)


def _erfc_gauss_product(u, a):
    # erfc(i u sqrt(1-ia)) * exp(-u^2) without forming either factor alone
    root = cmath.sqrt(complex(1.0, -a))
    twist = cmath.exp(complex(0.0, -a * u * u))
    re_zeta = -u * root.imag
    if re_zeta >= 0.0:
        return kernels.faddeeva_w(-u * root) * twist
    return 2.0 * math.exp(-u * u) - kernels.faddeeva_w(u * root) * twist


def tpt_weights(sys):
    """All weights over the manifold as (m, w_m) pairs."""
    return [(int(m), tpt_weight(sys, m)) for m in sys.indices]


def tpt_amplitude(sys, xi):
    """Excited-state amplitude S_N(xi) with the system's fixed weights.

    The global phase of the underlying second-order amplitude is dropped;
    only |c_e|^2 is observable.
    """
    return tpt_amplitude_grid(sys, np.array([float(xi)]))[0]


def tpt_amplitude_grid(sys, xi):
    weights = tpt_weights(sys)
    return gauss_sums.continuous_S_grid(sys.n_encoded, weights, +1, xi)


def rescale_trace(trace, n, n_prime):
    """Reinterpret a recorded trace for N on the axis xi' = (N'/N) xi.

    Requires N' = N + 2k: the relabeling shifts the reference level by k
    states, which changes the encoded integer in steps of two.
    """
    if trace.N != n:
        raise EncodingError(f"trace encodes N={trace.N}, not {n}")
    if (n_prime - n) % 2 != 0:
        raise EncodingError(
            f"N'={n_prime} is not reachable from N={n}: N'-N must be even"
        )
    return trace.rescaled(n_prime)
