"""Property-based checks of the numeric core (hypothesis-driven)."""
import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussfactor import gauss_sums, specfun

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(x=finite, y=finite)
def test_erfc_reflection(x, y):
    z = complex(x, y)
    s = specfun.erfc_complex(z) + specfun.erfc_complex(-z)
    assert abs(s - 2.0) < 1e-12


@settings(max_examples=200, deadline=None)
@given(x=finite, y=finite)
def test_erfc_conjugation(x, y):
    z = complex(x, y)
    a = specfun.erfc_complex(z.conjugate())
    b = specfun.erfc_complex(z).conjugate()
    assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


@settings(max_examples=150, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=50),
    x=st.floats(min_value=0.1, max_value=100.0, allow_nan=False),
)
def test_bessel_recurrence(n, x):
    jm, jc, jp = (specfun.bessel_j(k, x) for k in (n - 1, n, n + 1))
    rhs = 2.0 * n / x * jc
    scale = max(abs(jm), abs(jp), abs(rhs), 1e-280)
    assert abs(jm + jp - rhs) / scale < 1e-10


@settings(max_examples=100, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=5000),
    m=st.integers(min_value=1, max_value=12),
)
def test_reciprocal_sum_exact_at_divisors(n, m):
    spec = gauss_sums.UniformSumSpec(M=m, N=n)
    for q in range(1, math.isqrt(n) + 1):
        if n % q == 0:
            assert gauss_sums.reciprocal_A(spec, float(q)) == 1.0 + 0.0j


@settings(max_examples=100, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=60),
    ell=st.integers(min_value=1, max_value=59),
    xi=st.floats(min_value=-6.0, max_value=6.0, allow_nan=False),
)
def test_quadratic_sum_periodic_in_ell(n, ell, xi):
    # m^2 (ell + n)/n differs from m^2 ell/n by integers
    w = gauss_sums.uniform_weights(-5, 5)
    a = gauss_sums.quadratic_S(n, w, ell % n)
    b = gauss_sums.quadratic_S(n, w, ell % n + n)
    assert abs(a - b) < 1e-12


@settings(max_examples=100, deadline=None)
@given(
    xi=st.floats(min_value=-8.0, max_value=8.0, allow_nan=False),
    n=st.integers(min_value=2, max_value=30),
)
def test_lattice_sum_n_periodic(xi, n):
    w = [(m, complex(0.3 * m, 0.1)) for m in range(-6, 7)]
    s1 = gauss_sums.continuous_S(n, w, 1, xi)
    s2 = gauss_sums.continuous_S(n, w, 1, xi + n)
    assert abs(s1 - s2) <= 1e-10 * max(1.0, abs(s1))
