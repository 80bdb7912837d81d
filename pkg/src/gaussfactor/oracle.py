"""Independent numerical checks of the closed-form amplitudes.

Everything here integrates the first-order excitation dynamics directly --
adaptive panel quadrature of the interaction integral, or time stepping of
the underlying differential equation -- and never reuses the analytic
weight formulas it is meant to verify.
"""
import heapq
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import solve_ivp

from .errors import QuadratureAccuracyError
from .pulse import ChirpedPulse

__all__ = [
    "SinusoidalModulation",
    "LinearModulation",
    "TrainEnvelope",
    "DriveSpec",
    "adaptive_complex_quad",
    "quadrature_amplitude",
    "ode_amplitude",
    "quadrature_hn",
    "ordered_double_integral",
    "two_photon_weight_reference",
]


@dataclass(frozen=True)
class SinusoidalModulation:
    """E_m ~ cos(Delta t + phi); sweep phase beta(t) = kappa sin(Delta t + phi)."""

    omega_ee: float
    big_delta: float
    phi: float = 0.0

    @property
    def kappa(self):
        return self.omega_ee / self.big_delta

    def beta(self, t):
        return self.kappa * np.sin(self.big_delta * np.asarray(t) + self.phi)

    def beta_derivative_bound(self):
        return abs(self.omega_ee)

    def stationary_points(self, delta, t0, t1):
        # solutions of delta = Omega_ee cos(Delta t + phi)
        if self.omega_ee == 0.0:
            return []
        ratio = delta / self.omega_ee
        if abs(ratio) > 1.0:
            return []
        base = math.acos(ratio)
        out = []
        for branch in (base, -base):
            k0 = math.floor((self.big_delta * t0 + self.phi - branch) / (2 * math.pi))
            k = k0
            while True:
                t = (branch - self.phi + 2 * math.pi * k) / self.big_delta
                if t > t1:
                    break
                if t >= t0:
                    out.append(t)
                k += 1
        return sorted(out)


@dataclass(frozen=True)
class LinearModulation:
    """E_m ~ t/T; sweep phase alpha(t) = Omega_ee t^2 / (2T) (beta_0 dropped)."""

    omega_ee: float
    period: float

    def beta(self, t):
        t = np.asarray(t)
        return 0.5 * self.omega_ee * t * t / self.period

    def beta_derivative_bound(self, t_extent=None):
        if t_extent is None:
            return abs(self.omega_ee)
        return abs(self.omega_ee) * t_extent / self.period

    def stationary_points(self, delta, t0, t1):
        t = delta * self.period / self.omega_ee
        return [t] if t0 <= t <= t1 else []


@dataclass(frozen=True)
class TrainEnvelope:
    """2M+1 delta pulses a time T apart; handled analytically, never sampled."""

    m_pulses: int
    period: float


@dataclass(frozen=True)
class DriveSpec:
    """One integration task: modulation + drive envelope + detuning + window."""

    modulation: Union[SinusoidalModulation, LinearModulation]
    envelope: Union[ChirpedPulse, TrainEnvelope]
    delta: float
    t0: float
    t1: float

    def __post_init__(self):
        if not self.t0 < self.t1:
            raise ValueError("t0 must be < t1")
        if isinstance(self.envelope, ChirpedPulse):
            if self.t1 - self.t0 < 6.0 * self.envelope.duration:
                raise ValueError("window must cover at least 6 pulse widths")
        elif isinstance(self.envelope, TrainEnvelope):
            need = self.envelope.m_pulses * self.envelope.period
            if self.t0 > -need or self.t1 < need:
                raise ValueError("window must cover the whole pulse train")
        # other envelopes duck-type .envelope(t); no window rule imposed


# ----------------------------------------------------------------------------
# adaptive panel quadrature
# ----------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = leggauss(16)


def _panel_values(f, lo, width):
    """Coarse and fine Gauss-Legendre estimates for panels [lo, lo+width).

    lo, width are arrays (one entry per panel); f must accept an ndarray.
    """
    lo = np.asarray(lo, dtype=np.float64)
    width = np.asarray(width, dtype=np.float64)
    half = 0.5 * width
    mid = lo + half
    # coarse: 16 nodes on the panel; fine: 16 on each half
    x_c = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    x_l = (lo + 0.25 * width)[:, None] + 0.25 * width[:, None] * _GL_NODES[None, :]
    x_r = (lo + 0.75 * width)[:, None] + 0.25 * width[:, None] * _GL_NODES[None, :]
    allx = np.concatenate([x_c, x_l, x_r], axis=1).ravel()
    vals = np.asarray(f(allx), dtype=np.complex128).reshape(lo.size, 48)
    coarse = (vals[:, 0:16] @ _GL_WEIGHTS) * half
    fine = (vals[:, 16:32] @ _GL_WEIGHTS) * (0.25 * width) + (
        vals[:, 32:48] @ _GL_WEIGHTS
    ) * (0.25 * width)
    return fine, np.abs(fine - coarse)


def adaptive_complex_quad(
    f,
    a,
    b,
    abs_tol=1e-10,
    breakpoints=(),
    max_frequency=None,
    max_evals=20_000_000,
):
    """Integrate a complex-valued f over [a, b] to an absolute tolerance.

    Initial panels are split at the supplied breakpoints (stationary-phase
    points) and sized so that max_frequency * width stays below a few
    radians per panel; panels with the largest embedded error estimate are
    then bisected until the summed estimate is within abs_tol. Returns
    (value, error_estimate). Raises QuadratureAccuracyError with the best
    estimate attached if the node budget runs out first.
    """
    edges = [a, b] + [t for t in breakpoints if a < t < b]
    edges = sorted(set(edges))
    lo_list = []
    w_list = []
    for s0, s1 in zip(edges[:-1], edges[1:]):
        seg = s1 - s0
        if max_frequency and max_frequency > 0:
            count = max(1, int(math.ceil(seg * max_frequency / (4.0 * math.pi))))
        else:
            count = 8
        width = seg / count
        lo_list.extend(s0 + k * width for k in range(count))
        w_list.extend([width] * count)
    lo = np.array(lo_list)
    width = np.array(w_list)
    evals = lo.size * 48
    if evals > max_evals:
        raise QuadratureAccuracyError(
            f"initial panelization already needs {evals} evaluations"
        )
    fine, err = _panel_values(f, lo, width)

    heap = [
        (-err[i], i, lo[i], width[i], fine[i])
        for i in range(lo.size)
        if err[i] > 0
    ]
    heapq.heapify(heap)
    tiebreak = lo.size
    total = complex(fine.sum())
    total_err = float(err.sum())
    while total_err > abs_tol and heap:
        if evals + 96 > max_evals:
            raise QuadratureAccuracyError(
                f"needed more than {max_evals} evaluations for abs_tol={abs_tol}",
                estimate=total,
                error=total_err,
            )
        neg_e, _, plo, pw, pval = heapq.heappop(heap)
        evals += 96
        half = 0.5 * pw
        f2, e2 = _panel_values(f, np.array([plo, plo + half]), np.array([half, half]))
        total += complex(f2.sum() - pval)
        total_err += float(e2.sum()) - (-neg_e)
        for i in (0, 1):
            if e2[i] > 0:
                heapq.heappush(heap, (-e2[i], tiebreak, plo + i * half, half, f2[i]))
                tiebreak += 1
    return total, total_err


# ----------------------------------------------------------------------------
# first-order amplitude, three independent routes
# ----------------------------------------------------------------------------

def _check_chirped(spec):
    if isinstance(spec.envelope, TrainEnvelope):
        raise ValueError(
            "numerical integration needs a smooth envelope; the delta-pulse "
            "train is summed analytically by the pulse_train module"
        )


def _integrand(spec):
    mod = spec.modulation
    delta = spec.delta
    env = spec.envelope

    def f(t):
        return np.exp(1j * (delta * t - mod.beta(t))) * env.envelope(t)

    return f


def _frequency_bound(spec):
    mod = spec.modulation
    env = spec.envelope
    t_extent = max(abs(spec.t0), abs(spec.t1))
    if isinstance(mod, SinusoidalModulation):
        beta_rate = mod.beta_derivative_bound()
    else:
        beta_rate = mod.beta_derivative_bound(t_extent)
    a = env.dispersion_a
    chirp_rate = abs(a) * env.delta_omega ** 2 * t_extent / (1.0 + a * a)
    return abs(spec.delta) + beta_rate + chirp_rate + env.delta_omega


def quadrature_amplitude(spec, rabi_ge=1.0, abs_tol=1e-8):
    """c_e(t1) = i Omega_ge e^{i beta(t1)} int_{t0}^{t1} e^{-i beta + i delta t} h(t) dt.

    Adaptive panel quadrature with panels seeded at the stationary-phase
    points of delta t - beta(t).
    """
    _check_chirped(spec)
    stat = spec.modulation.stationary_points(spec.delta, spec.t0, spec.t1)
    value, _ = adaptive_complex_quad(
        _integrand(spec),
        spec.t0,
        spec.t1,
        abs_tol=abs_tol,
        breakpoints=stat,
        max_frequency=_frequency_bound(spec),
    )
    phase = complex(np.exp(1j * float(spec.modulation.beta(spec.t1))))
    return 1j * rabi_ge * phase * value


def ode_amplitude(spec, rabi_ge=1.0, rtol=1e-10, atol=1e-12):
    """Time-step i c' = -Omega_ee(t) c - Omega_ge e^{i delta t} h(t), c(t0) = 0.

    Weak drive is assumed (first-order result meaningful), not enforced.
    Raises QuadratureAccuracyError if the stepper fails.
    """
    _check_chirped(spec)
    mod = spec.modulation
    env = spec.envelope
    if isinstance(mod, SinusoidalModulation):
        def omega_ee(t):
            return mod.omega_ee * math.cos(mod.big_delta * t + mod.phi)
    else:
        def omega_ee(t):
            return mod.omega_ee * t / mod.period

    delta = spec.delta

    def rhs(t, y):
        drive = rabi_ge * complex(np.exp(1j * delta * t)) * env.envelope(t)
        return [1j * (omega_ee(t) * y[0] + drive)]

    sol = solve_ivp(
        rhs,
        (spec.t0, spec.t1),
        [0.0 + 0.0j],
        method="DOP853",
        rtol=rtol,
        atol=atol,
        dense_output=False,
    )
    if not sol.success:
        raise QuadratureAccuracyError(f"ODE integration failed: {sol.message}")
    return complex(sol.y[0, -1])


def quadrature_hn(sys, n, phi2=None, abs_tol=1e-9):
    """Direct quadrature of the n-th drive integral of a Floquet system.

    Integrates exp(i delta_n t) f(t) over |t| <= 8 sqrt(1+a^2)/delta_omega
    and is compared against the closed post-pulse form by the test suite.
    """
    pulse = sys.pulse if phi2 is None else sys.pulse.with_phi2(phi2)
    delta_n = sys.offset(n)
    half = 8.0 * pulse.duration

    def f(t):
        return np.exp(1j * delta_n * t) * pulse.envelope(t)

    a = pulse.dispersion_a
    freq = (
        abs(delta_n)
        + abs(a) * pulse.delta_omega ** 2 * half / (1.0 + a * a)
        + pulse.delta_omega
    )
    value, _ = adaptive_complex_quad(
        f, -half, half, abs_tol=abs_tol, max_frequency=freq
    )
    return value


# ----------------------------------------------------------------------------
# ordered double integral (two-photon weight reference)
# ----------------------------------------------------------------------------

def ordered_double_integral(g1, g2, a, b, max_frequency, chunk=1024):
    """int_a^b dt2 g2(t2) int_a^{t2} dt1 g1(t1), on fixed Gauss-Legendre panels.

    Panels are sized from max_frequency (a few radians of phase each); the
    inner prefix is the exact panel prefix sum plus a partial-panel rule at
    every outer node. Both integrands must accept ndarrays.
    """
    count = max(8, int(math.ceil((b - a) * max_frequency / (4.0 * math.pi))))
    width = (b - a) / count
    edges = a + width * np.arange(count + 1)
    half = 0.5 * width
    centers = edges[:-1] + half

    # per-panel integrals of g1, then exclusive prefix sums
    nodes = centers[:, None] + half * _GL_NODES[None, :]
    panel_g1 = (
        np.asarray(g1(nodes.ravel()), dtype=np.complex128).reshape(count, 16)
        @ _GL_WEIGHTS
    ) * half
    prefix = np.concatenate(([0.0 + 0.0j], np.cumsum(panel_g1)))

    total = 0.0 + 0.0j
    for start in range(0, count, chunk):
        stop = min(start + chunk, count)
        lo = edges[start:stop, None]
        outer = centers[start:stop, None] + half * _GL_NODES[None, :]
        # partial inner integral from each panel edge to each outer node
        span = 0.5 * (outer - lo)
        inner_nodes = lo[:, :, None] + span[:, :, None] * (_GL_NODES[None, None, :] + 1.0)
        inner_vals = np.asarray(
            g1(inner_nodes.ravel()), dtype=np.complex128
        ).reshape(stop - start, 16, 16)
        partial = (inner_vals @ _GL_WEIGHTS) * span
        cum = prefix[start:stop, None] + partial
        outer_vals = np.asarray(g2(outer.ravel()), dtype=np.complex128).reshape(
            stop - start, 16
        )
        total += complex((((outer_vals * cum) @ _GL_WEIGHTS) * half).sum())
    return total


def two_photon_weight_reference(pulse, delta_m, half_width_sigmas=6.0):
    """Brute-force A_m = int dt2 e^{-i d t2} f(t2) int^{t2} dt1 e^{+i d t1} f(t1).

    The analytic weight of the two-photon scheme equals
    (rabi_product/2) * |A_m| in modulus; this routine never touches erfc.
    """
    w = half_width_sigmas * pulse.duration

    def g1(t):
        return np.exp(1j * delta_m * t) * pulse.envelope(t)

    def g2(t):
        return np.exp(-1j * delta_m * t) * pulse.envelope(t)

    a = pulse.dispersion_a
    freq = (
        abs(delta_m)
        + abs(a) * pulse.delta_omega ** 2 * w / (1.0 + a * a)
        + pulse.delta_omega
    )
    return ordered_double_integral(g1, g2, -w, w, max_frequency=freq)
