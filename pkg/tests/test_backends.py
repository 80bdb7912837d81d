"""Cross-checks between the compiled kernels and the numpy fallback."""
import math

import numpy as np
import pytest

from gaussfactor._backend import available_backends, get_kernels

HAVE_COMPILED = "compiled" in available_backends()

pytestmark = pytest.mark.skipif(
    not HAVE_COMPILED, reason="compiled kernels not built"
)


@pytest.fixture(scope="module")
def both():
    return get_kernels("python"), get_kernels("compiled")


def test_backend_names(both):
    py, cy = both
    assert py.BACKEND_NAME == "python"
    assert cy.BACKEND_NAME == "compiled"


def test_phase_sum_grid_agreement(both):
    py, cy = both
    rng = np.random.default_rng(31)
    m = np.arange(-60, 61)
    ci = np.floor(m + m * m / 21.0)
    cf = (m + m * m / 21.0) - ci
    w = (rng.normal(size=m.size) + 1j * rng.normal(size=m.size)).astype(complex)
    xi = rng.uniform(-15, 15, 400)
    a = py.phase_sum_grid(ci, cf, w, xi)
    b = cy.phase_sum_grid(ci, cf, w, xi)
    assert np.max(np.abs(a - b) / np.abs(a)) < 1e-13


def test_recip_phase_sum_agreement_and_exactness(both):
    py, cy = both
    t = np.array([float(n * n * 1911) for n in range(-10, 11)])
    for xi in (3.0, 13.0, 44.0, 7.3, -21.0, 0.9):
        a = py.recip_phase_sum(t, xi, -1)
        b = cy.recip_phase_sum(t, xi, -1)
        assert abs(a - b) < 1e-13 * max(1.0, abs(a))
    for backend in both:
        assert backend.recip_phase_sum(t, 3.0, -1) == 21.0 + 0.0j


def test_residue_quad_sum_agreement(both):
    py, cy = both
    rng = np.random.default_rng(32)
    m = np.arange(-11, 12, dtype=np.int64)
    w = (rng.normal(size=m.size) + 1j * rng.normal(size=m.size)).astype(complex)
    for num, den, sign in ((5, 105, 1), (1911, 44, -1), (17, 4, 1)):
        a = py.residue_quad_sum(m, w, num, den, sign)
        b = cy.residue_quad_sum(m, w, num, den, sign)
        assert abs(a - b) < 1e-13 * max(1.0, abs(a))


def test_residue_quad_sum_wide_modulus(both):
    # dens beyond 2^31 take the big-integer path in the compiled backend
    py, cy = both
    m = np.arange(0, 7, dtype=np.int64)
    w = np.ones(7, dtype=complex)
    den = 2 ** 40 + 7
    a = py.residue_quad_sum(m, w, 12345, den, -1)
    b = cy.residue_quad_sum(m, w, 12345, den, -1)
    assert abs(a - b) < 1e-12 * abs(a)


def test_faddeeva_agreement(both):
    py, cy = both
    rng = np.random.default_rng(33)
    pts = rng.uniform(-25, 25, 500) + 1j * rng.uniform(-5, 25, 500)
    for z in pts:
        try:
            a = py.faddeeva_w(complex(z))
        except OverflowError:
            with pytest.raises(OverflowError):
                cy.faddeeva_w(complex(z))
            continue
        b = cy.faddeeva_w(complex(z))
        assert abs(a - b) <= 1e-13 * abs(a)


def test_bessel_agreement(both):
    py, cy = both
    for nmax, x in ((40, 7.3), (120, 629.1), (830, 2 * math.pi * 1e5 + math.pi / 4), (64, 0.0)):
        a = py.bessel_j_seq(nmax, x)
        b = cy.bessel_j_seq(nmax, x)
        assert np.array_equal(a, b) or np.max(np.abs(a - b)) < 1e-15


def test_forced_backend_env():
    import os
    import subprocess
    import sys
    from pathlib import Path

    import gaussfactor

    pkg_root = str(Path(gaussfactor.__file__).resolve().parent.parent)
    for forced in ("python", "compiled"):
        env = dict(os.environ, GAUSSFACTOR_BACKEND=forced, PYTHONPATH=pkg_root)
        out = subprocess.run(
            [sys.executable, "-c", "import gaussfactor; print(gaussfactor.BACKEND)"],
            capture_output=True, text=True, env=env,
        )
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == forced


def test_active_backend_prefers_compiled():
    import os

    import gaussfactor

    forced = os.environ.get("GAUSSFACTOR_BACKEND", "").strip().lower()
    assert gaussfactor.BACKEND == (forced or "compiled")
