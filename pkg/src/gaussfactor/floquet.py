"""Floquet-ladder scheme: modulated excited state driven by a chirped pulse.

A cw modulation of the excited state splits it into sidebands n with Bessel
weights J_n(kappa); the chirped one-photon drive then interferes all
excitation channels. The amplitude is a Gauss sum in the dimensionless
chirp xi with N = delta / Delta.
"""
import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import EncodingError
from .pulse import ChirpedPulse

__all__ = [
    "FloquetSystem",
    "encode_n_floquet",
    "sideband_integral_hn",
    "floquet_weight",
    "floquet_weights",
    "floquet_amplitude",
    "floquet_amplitude_grid",
    "amplitude_via_hn",
    "reduced_amplitude",
    "reduced_amplitude_grid",
    "discrete_signal",
]

_INT_TOL = 1e-9
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def encode_n_floquet(delta, big_delta):
    """N = delta / Delta; raises EncodingError unless that is an integer."""
    ratio = delta / big_delta
    n = round(ratio)
    if n < 1 or abs(ratio - n) > _INT_TOL * max(1.0, abs(ratio)):
        raise EncodingError(f"delta/Delta = {ratio!r} is not a positive integer")
    return int(n)


@dataclass(frozen=True)
class FloquetSystem:
    """Two-level system with sinusoidally modulated excited state.

    delta : laser detuning omega_0 - omega_L (fs^-1)
    big_delta : modulation frequency (fs^-1)
    kappa : modulation index Omega_ee / big_delta (dimensionless)
    phi : modulation phase (radians)
    pulse : chirped drive pulse; its bandwidth sets Delta_n = delta_omega/Delta
    n_range : half-width of the retained sideband window (default: the
        Gaussian support ceil(N + 8 Delta_n), capped at the Bessel support
        kappa + 40 where that is smaller)
    """

    delta: float
    big_delta: float
    kappa: float
    phi: float
    pulse: ChirpedPulse
    n_range: int = 0

    # derived, cached on first use
    _jn_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = encode_n_floquet(self.delta, self.big_delta)
        if self.kappa <= 0:
            raise ValueError("kappa must be > 0")
        if self.delta_n <= 0:
            raise ValueError("delta_omega/Delta must be > 0")
        if self.n_range == 0:
            default = math.ceil(n + 8.0 * self.delta_n)
            cap = math.ceil(self.kappa) + 40
            object.__setattr__(self, "n_range", min(default, cap))
        elif self.n_range < n:
            raise ValueError(f"n_range={self.n_range} must cover N={n}")

    @property
    def n_encoded(self):
        return encode_n_floquet(self.delta, self.big_delta)

    @property
    def delta_n(self):
        """Sideband width of the weight distribution, delta_omega / Delta."""
        return self.pulse.delta_omega / self.big_delta

    def offset(self, n):
        """delta_n = delta - n Delta of the n-th satellite."""
        return self.delta - n * self.big_delta

    def sideband_indices(self):
        return np.arange(-self.n_range, self.n_range + 1)

    def bessel_weights(self):
        """J_n(kappa) for n over the retained window (parity below n < 0)."""
        key = self.n_range
        if key not in self._jn_cache:
            seq = kernels.bessel_j_seq(self.n_range, self.kappa)
            n = self.sideband_indices()
            jn = seq[np.abs(n)]
            jn = np.where((n < 0) & (np.abs(n) % 2 == 1), -jn, jn)
            self._jn_cache[key] = jn
        return self._jn_cache[key]


def sideband_integral_hn(sys, n, phi2=None):
    """Post-pulse value of the n-th drive integral.

    h_n = sqrt(2 pi)/delta_omega * exp[-(delta_n/delta_omega)^2 / 2]
          * exp[i delta_n^2 phi2 / 2]
    """
    dw = sys.pulse.delta_omega
    p2 = sys.pulse.phi2 if phi2 is None else phi2
    dn = sys.offset(n)
    u = dn / dw
    return (SQRT_TWO_PI / dw) * math.exp(-0.5 * u * u) * cmath.exp(
        0.5j * dn * dn * p2
    )


def floquet_weight(sys, n):
    """w~_n = exp[-((n-N)/Delta_n)^2/2] J_n(kappa) e^{-i n phi} / (sqrt(2 pi) Delta_n)."""
    n = int(n)
    if abs(n) > sys.n_range:
        raise ValueError(f"|n|={abs(n)} outside retained window {sys.n_range}")
    dn = sys.delta_n
    gauss = math.exp(-0.5 * ((n - sys.n_encoded) / dn) ** 2) / (SQRT_TWO_PI * dn)
    jn = kernels.bessel_j(n, sys.kappa)
    return gauss * jn * cmath.exp(-1j * n * sys.phi)


def floquet_weights(sys):
    """All retained weights as arrays (indices, values)."""
    n = sys.sideband_indices()
    dn = sys.delta_n
    gauss = np.exp(-0.5 * ((n - sys.n_encoded) / dn) ** 2) / (SQRT_TWO_PI * dn)
    vals = gauss * sys.bessel_weights() * np.exp(-1j * n * sys.phi)
    return n, vals


def floquet_amplitude(sys, xi):
    """Excited-state amplitude at dimensionless chirp xi.

    sum_n w~_n exp[-i pi (n - n^2/(2N)) xi] over the retained window. The
    prefactor of modulus 2 pi |Omega_ge| / Delta and its phases are dropped;
    traces are normalized downstream.
    """
    return floquet_amplitude_grid(sys, np.array([float(xi)]))[0]


def floquet_amplitude_grid(sys, xi):
    n, vals = floquet_weights(sys)
    ci, cf = _phase_coefficients(n, sys.n_encoded)
    return kernels.phase_sum_grid(ci, cf, vals, np.asarray(xi, dtype=np.float64))


def _phase_coefficients(n, n_enc):
    # -pi (n - n^2/(2N)) xi = 2 pi (-n/2 + n^2/(4N)) xi, in cycles per xi;
    # the half-integer -n/2 rides in the remainder as exactly +-0.5
    ci = np.empty(n.size)
    cf = np.empty(n.size)
    four_n = 4 * n_enc
    for i, ni in enumerate(n):
        ni = int(ni)
        q, r = divmod(ni * ni, four_n)
        half, odd = divmod(ni, 2)
        ci[i] = float(q - half)
        cf[i] = r / four_n - 0.5 * odd
    return ci, cf


def amplitude_via_hn(sys, xi):
    """Amplitude assembled from the drive integrals h_n (cross-check route).

    Returns sum_n J_n(kappa) e^{-i n phi} h_n, which equals
    (2 pi / Delta) exp(i delta^2 phi2 / 2) times floquet_amplitude(sys, xi);
    the moduli agree after that constant is divided out.
    """
    p2 = math.pi * float(xi) / (sys.delta * sys.big_delta)
    n = sys.sideband_indices()
    jn = sys.bessel_weights()
    dw = sys.pulse.delta_omega
    dn_off = sys.delta - n * sys.big_delta
    u = dn_off / dw
    hn = (SQRT_TWO_PI / dw) * np.exp(-0.5 * u * u) * np.exp(0.5j * dn_off ** 2 * p2)
    terms = jn * np.exp(-1j * n * sys.phi) * hn
    return complex(terms.sum())


def reduced_amplitude(sys, xi):
    """Even-sideband reduction at kappa = 2 pi s + pi/4 (odd orders suppressed)."""
    return reduced_amplitude_grid(sys, np.array([float(xi)]))[0]


def reduced_amplitude_grid(sys, xi):
    _warn_unless_magic_kappa(sys.kappa)
    n_enc = sys.n_encoded
    dn = sys.delta_n
    m_range = (sys.n_range + 1) // 2
    m = np.arange(-m_range, m_range + 1)
    vals = (
        np.exp(-2.0 * ((m - n_enc / 2.0) / dn) ** 2)
        * np.exp(1j * m * (math.pi - 2.0 * sys.phi))
        / (math.pi * dn * math.sqrt(sys.kappa))
    )
    # -2 pi (m - m^2/N) xi  ->  coefficient -(m - m^2/N) in cycles
    ci = np.empty(m.size)
    cf = np.empty(m.size)
    for i, mi in enumerate(m):
        mi = int(mi)
        q, r = divmod(mi * mi, n_enc)
        ci[i] = float(q - mi)
        cf[i] = r / n_enc
    return kernels.phase_sum_grid(ci, cf, vals, np.asarray(xi, dtype=np.float64))


def _warn_unless_magic_kappa(kappa):
    s = (kappa - math.pi / 4.0) / (2.0 * math.pi)
    if abs(s - round(s)) > 1e-6 or round(s) < 10:
        warnings.warn(
            "reduced amplitude assumes kappa = 2 pi s + pi/4 with s >= 10; "
            f"kappa={kappa} is off that grid, odd sidebands may contribute",
            stacklevel=3,
        )


def discrete_signal(sys, ells):
    """|amplitude|^2 at integer chirp values, where only quadratic phases act."""
    out = []
    for ell in ells:
        if ell < 1:
            raise ValueError("discrete scan needs ell >= 1")
        out.append(abs(floquet_amplitude(sys, float(ell))) ** 2)
    return out
