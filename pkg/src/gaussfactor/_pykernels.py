"""NumPy fallback implementations of the hot numeric kernels.

The compiled extension (``gaussfactor._ckernels``) exports the same surface;
``gaussfactor._backend`` picks whichever is importable. Everything here is
pure: no state, safe under concurrent callers.
"""
import math

import numpy as np

from ._faddeeva_tables import WEIDEMAN_COEFFS, WEIDEMAN_L

BACKEND_NAME = "python"

_SQRT_PI = 1.7724538509055160273
_TWO_PI = 6.283185307179586
# 2*pi - float64(2*pi), for huge-argument phase reduction
_TWO_PI_REM = 2.4492935982947064e-16


# ----------------------------------------------------------------------------
# Gauss-sum kernels
# ----------------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2^27 + 1, Dekker/Veltkamp splitting constant


def _two_prod(a, b):
    """Exact product a*b = (hi, lo) with hi = fl(a*b); vectorized Dekker."""
    hi = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    lo = ((ah * bh - hi) + ah * bl + al * bh) + al * bl
    return hi, lo


def phase_sum_grid(coef_int, coef_frac, weights, xi):
    """Evaluate sum_m w_m exp(2 pi i c_m xi_j) for every grid point xi_j.

    Parameters
    ----------
    coef_int : (nterm,) float64
        Integer part of the per-term phase coefficient c_m (cycles per
        unit xi); exactly integer-valued, |coef_int| < 2^52.
    coef_frac : (nterm,) float64
        Remainder c_m - coef_int (any float for non-lattice sums).
    weights : (nterm,) complex128
    xi : (ngrid,) float64

    Returns
    -------
    (ngrid,) complex128

    The phase is reduced modulo one cycle with compensated (two-product)
    arithmetic, so huge integer coefficients lose no accuracy; term
    summation is pairwise (numpy reduction) to limit cancellation loss.
    """
    ci = np.asarray(coef_int, dtype=np.float64)
    cf = np.asarray(coef_frac, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.complex128)
    xi = np.asarray(xi, dtype=np.float64)
    xi_int = np.floor(xi)
    xi_frac = xi - xi_int
    # ci * xi_int is an exact integer (drops out of the phase); the rest is
    # accumulated from exact product halves
    h1, l1 = _two_prod(xi_frac[:, None], ci[None, :])
    h2, l2 = _two_prod(xi[:, None], cf[None, :])
    frac = np.mod(np.mod(h1, 1.0) + np.mod(h2, 1.0) + (l1 + l2), 1.0)
    terms = weights[np.newaxis, :] * np.exp((2j * np.pi) * frac)
    return terms.sum(axis=1)


def recip_phase_sum(tvals, xi, sign):
    """Evaluate sum_n exp(sign * 2 pi i t_n / xi) for integer-valued t_n.

    For integer xi the phase fraction is computed with exact integer
    arithmetic, so divisor cases (all t_n multiples of xi) come out exactly.
    """
    if xi == 0.0:
        raise ZeroDivisionError("xi = 0 is a pole of the reciprocal phase")
    tvals = np.asarray(tvals, dtype=np.float64)
    xr = round(xi)
    if xi == xr and abs(xr) <= 2 ** 53:
        ell = int(xr)
        frac = np.array(
            [(int(t) % ell) / ell for t in tvals], dtype=np.float64
        )
    else:
        # fmod is exact; only the final division rounds
        frac = np.fmod(tvals, xi) / xi
    return complex(np.exp((sign * 2j * np.pi) * frac).sum())


def residue_quad_sum(m, weights, num, den, sign):
    """Evaluate sum_m w_m exp(sign * 2 pi i m^2 num / den) exactly mod den.

    num, den, m are integers; the quadratic residue m^2 num mod den is taken
    in exact integer arithmetic before any floating-point phase appears.
    """
    if den == 0:
        raise ZeroDivisionError("den = 0")
    m = np.asarray(m, dtype=np.int64)
    weights = np.asarray(weights, dtype=np.complex128)
    den = int(den)
    num = int(num)
    frac = np.array(
        [((int(mm) * int(mm) * num) % den) / den for mm in m],
        dtype=np.float64,
    )
    return complex((weights * np.exp((sign * 2j * np.pi) * frac)).sum())


# ----------------------------------------------------------------------------
# Scaled complex error function w(z) = exp(-z^2) erfc(-i z)
# ----------------------------------------------------------------------------

def _w_upper(z):
    # requires Im z >= 0
    x = z.real
    y = z.imag
    s = abs(x) + y
    if s >= 12.0:
        if s >= 1000.0:
            depth = 4
        elif s >= 40.0:
            depth = 8
        elif s >= 20.0:
            depth = 12
        else:
            depth = 24
        r = 0.0j
        for k in range(depth, 0, -1):
            r = (0.5 * k) / (z - r)
        return (1j / _SQRT_PI) / (z - r)
    # Weideman rational approximation on the unit disk image of C+
    iz = 1j * z
    rec = 1.0 / (WEIDEMAN_L - iz)
    big_z = (WEIDEMAN_L + iz) * rec
    p = 0.0j
    for c in reversed(WEIDEMAN_COEFFS):
        p = p * big_z + c
    return 2.0 * p * rec * rec + (1.0 / _SQRT_PI) * rec


def faddeeva_w(z):
    """w(z) for complex z; relative accuracy ~1e-13 in the upper half-plane.

    For Im z < 0 the reflection w(z) = 2 exp(-z^2) - w(-z) applies, which
    overflows once Im(z)^2 - Re(z)^2 is large; that raises OverflowError
    rather than returning inf.
    """
    z = complex(z)
    if math.isnan(z.real) or math.isnan(z.imag):
        raise ValueError("faddeeva_w: nan argument")
    if z.imag >= 0.0:
        return _w_upper(z)
    mz2 = -(z * z)
    if mz2.real > 709.0:
        raise OverflowError(
            f"faddeeva_w({z!r}) exceeds double range (|w| ~ exp({mz2.real:.1f}))"
        )
    w = _w_upper(-z)
    return 2.0 * np.exp(mz2) - w


def faddeeva_w_many(z):
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty(z.shape, dtype=np.complex128)
    flat = z.ravel()
    oflat = out.ravel()
    for i in range(flat.size):
        oflat[i] = faddeeva_w(complex(flat[i]))
    return out


# ----------------------------------------------------------------------------
# Bessel J_n
# ----------------------------------------------------------------------------

def _reduce_two_pi(x):
    # x mod 2*pi, compensating the rounding of float64(2*pi) itself
    k = math.floor(x / _TWO_PI)
    return math.fmod(x, _TWO_PI) - k * _TWO_PI_REM


def _hankel_jn(n, x):
    # large-argument asymptotic, full double accuracy for x >= 30, n <= 1
    mu = 4.0 * n * n
    p = 1.0
    q = 0.0
    hk = 1.0
    for k in range(1, 24):
        hk *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if k % 2 == 1:
            q += (-1.0) ** ((k - 1) // 2) * hk
        else:
            p += (-1.0) ** (k // 2) * hk
    w = _reduce_two_pi(x) - (n % 4) * (math.pi / 2) - math.pi / 4
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(w) - q * math.sin(w))


def bessel_j_seq(nmax, x):
    """J_0(x) .. J_nmax(x) for x >= 0.

    x >= 30 with nmax <= x/2 uses the Hankel asymptotic for J_0, J_1 plus
    upward recurrence (stable in the oscillatory regime). Everything else
    runs Miller downward recurrence with even-order normalization. Orders
    far above x underflow to exactly 0.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if x < 0.0:
        raise ValueError("x must be >= 0")
    out = np.zeros(nmax + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    if x >= 30.0 and nmax <= 0.5 * x:
        out[0] = _hankel_jn(0, x)
        if nmax >= 1:
            out[1] = _hankel_jn(1, x)
            for n in range(1, nmax):
                out[n + 1] = (2.0 * n / x) * out[n] - out[n - 1]
        return out
    top = max(nmax, int(x)) + 24 + int(3.0 * math.sqrt(max(nmax, x, 1.0)))
    if top % 2 == 1:
        top += 1
    jp = 0.0
    jc = 1e-300
    ssum = 0.0
    for n in range(top, 0, -1):
        jm = (2.0 * n / x) * jc - jp
        jp = jc
        jc = jm
        if n - 1 <= nmax:
            out[n - 1] = jc
        if (n - 1) % 2 == 0:
            ssum += 2.0 * jc if n > 1 else jc
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            ssum *= 1e-250
            out *= 1e-250
    out /= ssum
    return out


def _log10_jn_estimate(n, x):
    # leading Debye estimate of log10 J_n(x) for n >> x
    if n <= 0 or x <= 0.0:
        return 0.0
    r = math.e * x / (2.0 * n)
    return n * math.log10(r) - 0.5 * math.log10(2 * math.pi * n)


def bessel_j(n, x):
    """J_n(x) for integer n (any sign) and x >= 0."""
    n = int(n)
    if x < 0.0:
        raise ValueError("x must be >= 0 (use the parity identity for -x)")
    sign = 1.0
    if n < 0:
        n = -n
        if n % 2 == 1:
            sign = -1.0
    if x == 0.0:
        return sign * (1.0 if n == 0 else 0.0)
    if n > x + 50.0 and _log10_jn_estimate(n, x) < -320.0:
        return 0.0
    return sign * bessel_j_seq(n, x)[n]
