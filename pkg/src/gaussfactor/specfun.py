"""Complex error function and Bessel functions used by the weight factors."""
import math

import numpy as np

from ._backend import kernels

__all__ = [
    "faddeeva_w",
    "erfc_complex",
    "bessel_j",
    "bessel_j_sequence",
    "bessel_j_asymptotic",
]


def faddeeva_w(z):
    """Scaled complementary error function w(z) = exp(-z^2) erfc(-i z).

    Finite for every z in the closed upper half-plane; in the lower half-plane
    it grows like exp(Im(z)^2) and raises OverflowError once outside double
    range.
    """
    return kernels.faddeeva_w(z)


def erfc_complex(z):
    """erfc continued to complex argument.

    Computed through w(z) in a form whose exponential factor stays on the
    side of the reflection formula where it is bounded. Raises OverflowError
    where |erfc(z)| itself exceeds double range (Im(z)^2 - Re(z)^2 >~ 709),
    so an infinity is never silently returned.
    """
    z = complex(z)
    if math.isnan(z.real) or math.isnan(z.imag):
        raise ValueError("erfc_complex: nan argument")
    if z.real >= 0.0:
        return _erfc_right_half(z)
    return 2.0 - _erfc_right_half(-z)


def _erfc_right_half(z):
    # Re z >= 0, so i z lies in the upper half-plane and w is tame there.
    mz2 = -(z * z)
    if mz2.real > 709.0:
        raise OverflowError(
            f"erfc_complex({z!r}): result magnitude ~ exp({mz2.real:.1f})"
        )
    return complex(np.exp(mz2)) * kernels.faddeeva_w(1j * z)


def bessel_j(n, x):
    """Bessel function of the first kind, integer order.

    Negative orders go through J_{-n}(x) = (-1)^n J_n(x). Orders far above
    the argument underflow to exactly 0 rather than erroring.
    """
    return kernels.bessel_j(int(n), float(x))


def bessel_j_sequence(n_max, x):
    """Array of J_0(x) .. J_{n_max}(x); one recurrence sweep for all orders."""
    return kernels.bessel_j_seq(int(n_max), float(x))


def bessel_j_asymptotic(n, x):
    """Large-argument form sqrt(2/(pi x)) cos(x - n pi/2 - pi/4).

    Cross-check companion for bessel_j; valid for n << x only.
    """
    if x <= 0.0:
        raise ValueError("x must be > 0")
    return math.sqrt(2.0 / (math.pi * x)) * math.cos(
        x - n * math.pi / 2.0 - math.pi / 4.0
    )
