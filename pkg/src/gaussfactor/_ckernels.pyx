# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot numeric kernels.

Same surface and same algorithms as gaussfactor._pykernels; see that module
for the reference semantics. The Gauss-sum loops, the rational w(z)
approximation, and the Bessel recurrences run as C loops with the GIL
released.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, floor, fma, fmod, log10, sin, sqrt

from ._faddeeva_tables import WEIDEMAN_COEFFS, WEIDEMAN_L

cnp.import_array()

BACKEND_NAME = "compiled"

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double cabs(double complex)

cdef double _SQRT_PI = 1.7724538509055160273
cdef double _TWO_PI = 6.283185307179586
cdef double _TWO_PI_REM = 2.4492935982947064e-16

cdef int _N_WEID = len(WEIDEMAN_COEFFS)
cdef double _L_WEID = WEIDEMAN_L
cdef double[64] _A_WEID
for _i, _c in enumerate(WEIDEMAN_COEFFS):
    _A_WEID[_i] = _c


# ----------------------------------------------------------------------------
# Gauss-sum kernels
# ----------------------------------------------------------------------------

cdef double complex _pairwise(double complex * terms, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    cdef Py_ssize_t mid, k
    cdef double complex acc = 0
    if hi - lo <= 16:
        for k in range(lo, hi):
            acc += terms[k]
        return acc
    mid = lo + (hi - lo) // 2
    return _pairwise(terms, lo, mid) + _pairwise(terms, mid, hi)


def phase_sum_grid(coef_int, coef_frac, weights, xi):
    """sum_m w_m exp(2 pi i c_m xi_j) over a xi grid; pairwise term sums.

    c_m arrives split as integer part + remainder; the phase is reduced
    modulo one cycle with fma-compensated products (see the fallback).
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ci = np.ascontiguousarray(coef_int, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cf = np.ascontiguousarray(coef_frac, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(xi, dtype=np.float64)
    cdef Py_ssize_t nterm = ci.shape[0]
    cdef Py_ssize_t ngrid = x.shape[0]
    if w.shape[0] != nterm or cf.shape[0] != nterm:
        raise ValueError("coef arrays and weights must have equal length")
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(ngrid, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] terms = np.empty(nterm, dtype=np.complex128)
    cdef double complex * tp = <double complex *> terms.data
    cdef Py_ssize_t i, j
    cdef double frac, ph, xj, xj_frac, h1, l1, h2, l2
    with nogil:
        for j in range(ngrid):
            xj = x[j]
            xj_frac = xj - floor(xj)
            for i in range(nterm):
                h1 = xj_frac * ci[i]
                l1 = fma(xj_frac, ci[i], -h1)
                h2 = xj * cf[i]
                l2 = fma(xj, cf[i], -h2)
                frac = fmod(fmod(h1, 1.0) + fmod(h2, 1.0) + (l1 + l2), 1.0)
                if frac < 0.0:
                    frac += 1.0
                ph = _TWO_PI * frac
                tp[i] = w[i] * (cos(ph) + 1j * sin(ph))
            out[j] = _pairwise(tp, 0, nterm)
    return out


def recip_phase_sum(tvals, xi, sign):
    """sum_n exp(sign 2 pi i t_n / xi), exact integer phases for integer xi."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = np.ascontiguousarray(tvals, dtype=np.float64)
    cdef double x = xi
    cdef long long s = sign
    if x == 0.0:
        raise ZeroDivisionError("xi = 0 is a pole of the reciprocal phase")
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] terms = np.empty(n, dtype=np.complex128)
    cdef double complex * tp = <double complex *> terms.data
    cdef double xr = floor(x + 0.5)
    cdef bint integral = (x == xr) and fabs(xr) <= 9007199254740992.0
    cdef long long ell = 0, ti, r
    cdef Py_ssize_t i
    cdef double frac, ph
    if integral:
        ell = <long long> xr
    with nogil:
        for i in range(n):
            if integral:
                ti = <long long> t[i]
                r = ti % ell
                if r != 0 and (r ^ ell) < 0:
                    r += ell
                frac = (<double> r) / (<double> ell)
            else:
                frac = fmod(t[i], x) / x
            ph = _TWO_PI * frac * s
            tp[i] = cos(ph) + 1j * sin(ph)
    return complex(_pairwise(tp, 0, n))


def residue_quad_sum(m, weights, num, den, sign):
    """sum_m w_m exp(sign 2 pi i m^2 num / den) with exact residues."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] mi = np.ascontiguousarray(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    if den == 0:
        raise ZeroDivisionError("den = 0")
    if mi.shape[0] != w.shape[0]:
        raise ValueError("m and weights must have equal length")
    cdef long long d = den
    cdef long long nu = num
    if not (0 < d < 2147483648):
        # keep exactness for out-of-range moduli via Python integers
        return complex(
            sum(
                wv * np.exp(sign * 2j * np.pi * ((int(mv) * int(mv) * int(num)) % int(den)) / int(den))
                for mv, wv in zip(np.asarray(m).tolist(), np.asarray(weights).tolist())
            )
        )
    cdef Py_ssize_t n = mi.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] terms = np.empty(n, dtype=np.complex128)
    cdef double complex * tp = <double complex *> terms.data
    cdef long long s = sign, mr, r, nur
    cdef Py_ssize_t i
    cdef double ph
    nur = nu % d
    if nur < 0:
        nur += d
    with nogil:
        for i in range(n):
            mr = mi[i] % d
            if mr < 0:
                mr += d
            r = (mr * mr) % d
            r = (r * nur) % d
            ph = _TWO_PI * s * (<double> r) / (<double> d)
            tp[i] = w[i] * (cos(ph) + 1j * sin(ph))
    return complex(_pairwise(tp, 0, n))


# ----------------------------------------------------------------------------
# Faddeeva w(z)
# ----------------------------------------------------------------------------

cdef double complex _w_upper(double complex z) noexcept nogil:
    cdef double x = z.real
    cdef double y = z.imag
    cdef double s = fabs(x) + y
    cdef double complex r = 0
    cdef double complex iz, rec, big, p
    cdef int depth, k
    if s >= 12.0:
        if s >= 1000.0:
            depth = 4
        elif s >= 40.0:
            depth = 8
        elif s >= 20.0:
            depth = 12
        else:
            depth = 24
        for k in range(depth, 0, -1):
            r = (0.5 * k) / (z - r)
        return (1j / _SQRT_PI) / (z - r)
    iz = 1j * z
    rec = 1.0 / (_L_WEID - iz)
    big = (_L_WEID + iz) * rec
    p = 0
    for k in range(_N_WEID - 1, -1, -1):
        p = p * big + _A_WEID[k]
    return 2.0 * p * rec * rec + (1.0 / _SQRT_PI) * rec


def faddeeva_w(z):
    """w(z); OverflowError in the deep lower half-plane (same as the fallback)."""
    cdef double complex zz = z
    if zz.real != zz.real or zz.imag != zz.imag:
        raise ValueError("faddeeva_w: nan argument")
    if zz.imag >= 0.0:
        return complex(_w_upper(zz))
    cdef double complex mz2 = -(zz * zz)
    if mz2.real > 709.0:
        raise OverflowError(
            f"faddeeva_w({z!r}) exceeds double range (|w| ~ exp({mz2.real:.1f}))"
        )
    return complex(2.0 * cexp(mz2) - _w_upper(-zz))


def faddeeva_w_many(z):
    arr = np.ascontiguousarray(np.asarray(z, dtype=np.complex128)).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] flat = arr
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef Py_ssize_t i
    for i in range(flat.shape[0]):
        out[i] = faddeeva_w(complex(flat[i]))
    return out.reshape(np.asarray(z).shape)


# ----------------------------------------------------------------------------
# Bessel J
# ----------------------------------------------------------------------------

cdef double _reduce_two_pi(double x) noexcept nogil:
    cdef double k = floor(x / _TWO_PI)
    return fmod(x, _TWO_PI) - k * _TWO_PI_REM


cdef double _hankel_jn(int n, double x) noexcept nogil:
    cdef double mu = 4.0 * n * n
    cdef double p = 1.0
    cdef double q = 0.0
    cdef double hk = 1.0
    cdef int k
    cdef double w
    for k in range(1, 24):
        hk *= (mu - (2 * k - 1) * (2 * k - 1)) / (k * 8.0 * x)
        if k % 2 == 1:
            q += hk if ((k - 1) // 2) % 2 == 0 else -hk
        else:
            p += hk if (k // 2) % 2 == 0 else -hk
    w = _reduce_two_pi(x) - (n % 4) * 1.5707963267948966 - 0.7853981633974483
    return sqrt(2.0 / (3.141592653589793 * x)) * (p * cos(w) - q * sin(w))


def bessel_j_seq(nmax, x):
    """J_0..J_nmax; Hankel + upward recurrence for large x, else Miller."""
    cdef Py_ssize_t nm = nmax
    cdef double xx = x
    if nm < 0:
        raise ValueError("nmax must be >= 0")
    if xx < 0.0:
        raise ValueError("x must be >= 0")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(nm + 1)
    cdef Py_ssize_t n, top, i
    cdef double jp, jc, jm, ssum
    if xx == 0.0:
        out[0] = 1.0
        return out
    if xx >= 30.0 and nm <= 0.5 * xx:
        with nogil:
            out[0] = _hankel_jn(0, xx)
            if nm >= 1:
                out[1] = _hankel_jn(1, xx)
                for n in range(1, nm):
                    out[n + 1] = (2.0 * n / xx) * out[n] - out[n - 1]
        return out
    top = max(nm, <Py_ssize_t> xx) + 24 + <Py_ssize_t> (3.0 * sqrt(max(<double> nm, max(xx, 1.0))))
    if top % 2 == 1:
        top += 1
    with nogil:
        jp = 0.0
        jc = 1e-300
        ssum = 0.0
        for n in range(top, 0, -1):
            jm = (2.0 * n / xx) * jc - jp
            jp = jc
            jc = jm
            if n - 1 <= nm:
                out[n - 1] = jc
            if (n - 1) % 2 == 0:
                ssum += 2.0 * jc if n > 1 else jc
            if fabs(jc) > 1e250:
                jc *= 1e-250
                jp *= 1e-250
                ssum *= 1e-250
                for i in range(nm + 1):
                    out[i] *= 1e-250
        for i in range(nm + 1):
            out[i] /= ssum
    return out


def bessel_j(n, x):
    """J_n(x), integer n of either sign, x >= 0."""
    cdef long long nn = n
    cdef double xx = x
    cdef double sign = 1.0
    if xx < 0.0:
        raise ValueError("x must be >= 0 (use the parity identity for -x)")
    if nn < 0:
        nn = -nn
        if nn % 2 == 1:
            sign = -1.0
    if xx == 0.0:
        return sign * (1.0 if nn == 0 else 0.0)
    if nn > xx + 50.0:
        r = 2.718281828459045 * xx / (2.0 * nn)
        if nn * log10(r) - 0.5 * log10(2 * 3.141592653589793 * nn) < -320.0:
            return 0.0
    return sign * bessel_j_seq(nn, xx)[nn]
