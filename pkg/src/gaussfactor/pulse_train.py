"""Pulse-train scheme: linearly swept two-level system hit by 2M+1 delta pulses.

Each pulse contributes one term of the reciprocal sum A_N(xi); at a divisor
xi = q of N every term is exactly 1, so |A_N(q)| = 1 is the factor signature.
"""
import math
from dataclasses import dataclass

from . import gauss_sums
from .errors import EncodingError

__all__ = [
    "PulseTrainSystem",
    "encode_n_pt",
    "xi_pt",
    "omega_ee_for_trial",
    "pt_amplitude",
    "pt_discrete_scan",
]

_INT_TOL = 1e-9
TWO_PI = 2.0 * math.pi


def encode_n_pt(delta, period):
    """N = delta T / (2 pi); raises EncodingError unless that is an integer."""
    ratio = delta * period / TWO_PI
    n = round(ratio)
    if n < 1 or abs(ratio - n) > _INT_TOL * max(1.0, abs(ratio)):
        raise EncodingError(f"delta*T/(2 pi) = {ratio!r} is not a positive integer")
    return int(n)


def xi_pt(delta, omega_ee):
    """Dimensionless sweep variable xi = 2 delta / Omega_ee."""
    if omega_ee <= 0.0:
        raise ValueError("omega_ee must be > 0")
    return 2.0 * delta / omega_ee


def omega_ee_for_trial(delta, ell):
    """Sweep Rabi frequency that puts xi exactly on the integer ell."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return 2.0 * delta / ell


@dataclass(frozen=True)
class PulseTrainSystem:
    """Linearly swept excited state, driven by 2M+1 pulses a time T apart.

    delta : detuning (fs^-1)
    period : pulse separation T (fs)
    omega_ee : sweep Rabi frequency (fs^-1), sets xi = 2 delta / omega_ee
    m_pulses : half-width M; the train has 2M+1 pulses
    omega_ge : drive Rabi frequency; default 1 so moduli equal |A_N|
    """

    delta: float
    period: float
    omega_ee: float
    m_pulses: int
    omega_ge: float = 1.0

    def __post_init__(self):
        encode_n_pt(self.delta, self.period)
        if self.omega_ee <= 0.0:
            raise ValueError("omega_ee must be > 0")
        if self.m_pulses < 1:
            raise ValueError("m_pulses must be >= 1")

    @property
    def n_encoded(self):
        return encode_n_pt(self.delta, self.period)

    @property
    def xi(self):
        return xi_pt(self.delta, self.omega_ee)

    def spec(self):
        return gauss_sums.UniformSumSpec(M=self.m_pulses, N=self.n_encoded)


def pt_amplitude(sys):
    """Excited-state amplitude Omega_ge * A_N(xi).

    The global phase i exp(i alpha(t)) accumulated by the sweep is dropped;
    the figure-of-merit is the modulus. Propagates the xi = 0 pole as
    ZeroDivisionError.
    """
    return sys.omega_ge * gauss_sums.reciprocal_A(sys.spec(), sys.xi)


def pt_discrete_scan(sys, ells):
    """|A_N(ell)| for each trial ell, retuning omega_ee to hit each integer."""
    spec = sys.spec()
    out = []
    for ell in ells:
        if ell < 1:
            raise ValueError("trial factors must be >= 1")
        out.append(abs(gauss_sums.reciprocal_A(spec, float(ell))))
    return out
