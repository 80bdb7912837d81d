import math

import numpy as np
import pytest

from gaussfactor import ChirpedPulse


def make(delta_omega=0.1525, phi2=0.0):
    return ChirpedPulse(omega_L=2.35, delta_omega=delta_omega, phi2=phi2)


class TestDispersion:
    def test_zero_phi2(self):
        assert make(phi2=0.0).dispersion_a == 0.0

    def test_reference_figure_value(self):
        p = make(delta_omega=0.1525, phi2=-465424.0)
        assert p.dispersion_a == pytest.approx(-10824.0, abs=0.2)

    def test_unit_bandwidth(self):
        assert make(delta_omega=1.0, phi2=7.0).dispersion_a == pytest.approx(7.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            ChirpedPulse(omega_L=1.0, delta_omega=0.0)
        with pytest.raises(ValueError):
            ChirpedPulse(omega_L=1.0, delta_omega=1.0, e0=0.0)


class TestPeakAmplitude:
    def test_unchirped(self):
        assert make(phi2=0.0).f0 == pytest.approx(1.0)

    def test_unit_dispersion(self):
        p = make(delta_omega=1.0, phi2=1.0)
        assert p.f0 == pytest.approx(np.sqrt((1 + 1j) / 2), rel=1e-15)
        assert abs(p.f0) == pytest.approx(2.0 ** -0.25, rel=1e-15)

    def test_modulus_law_and_decay(self):
        for phi2 in (-3e4, -10.0, 3.0, 1e5):
            p = make(phi2=phi2)
            a = p.dispersion_a
            assert abs(p.f0) ** 2 == pytest.approx(1.0 / math.sqrt(1 + a * a), rel=1e-14)
        huge = make(delta_omega=1.0, phi2=1e8)
        assert abs(huge.f0) == pytest.approx(1e-4, rel=1e-6)

    def test_continuous_through_zero_dispersion(self):
        lo = make(delta_omega=1.0, phi2=-1e-9).f0
        hi = make(delta_omega=1.0, phi2=1e-9).f0
        assert abs(lo - hi) < 1e-8


class TestEnvelope:
    def test_peak_value(self):
        p = make(phi2=-465424.0)
        assert p.envelope(0.0) == pytest.approx(p.f0, rel=1e-15)

    def test_plain_gaussian_point(self):
        p = make(delta_omega=0.2, phi2=0.0)
        assert p.envelope(1.0 / 0.2) == pytest.approx(math.exp(-0.5), rel=1e-14)

    def test_split_form_identity(self):
        # |f| and arg f from the compact complex form match the explicit
        # real-Gaussian x quadratic-phase decomposition
        rng = np.random.default_rng(9)
        for _ in range(50):
            p = make(phi2=float(rng.uniform(-1e5, 1e5)))
            a = p.dispersion_a
            t = float(rng.uniform(-3, 3)) * p.duration
            got = p.envelope(t)
            mod = abs(p.f0) * math.exp(-p.delta_omega ** 2 * t * t / (2 * (1 + a * a)))
            phase = -a * p.delta_omega ** 2 * t * t / (2 * (1 + a * a)) + np.angle(p.f0)
            want = mod * np.exp(1j * phase)
            assert got == pytest.approx(want, rel=1e-13)


class TestInstantaneousFrequency:
    def test_zeros(self):
        assert make(phi2=0.0).instantaneous_frequency(3.7) == 0.0
        assert make(phi2=100.0).instantaneous_frequency(0.0) == 0.0

    def test_unit_case(self):
        p = ChirpedPulse(omega_L=1.0, delta_omega=1.0, phi2=1.0)
        assert p.instantaneous_frequency(2.0) == pytest.approx(1.0, rel=1e-15)

    def test_sign_follows_phi2(self):
        assert make(phi2=1e4).instantaneous_frequency(10.0) > 0
        assert make(phi2=-1e4).instantaneous_frequency(10.0) < 0

    @pytest.mark.parametrize("a_target", [-100.0, -1.0, 0.0, 1.0, 100.0])
    def test_matches_numerical_phase_derivative(self, a_target):
        # the carrier convention is exp(-i omega_L t) f(t), so the frequency
        # offset is minus the derivative of arg f
        dw = 0.1525
        p = make(delta_omega=dw, phi2=a_target / dw ** 2)
        span = 3.0 * p.duration
        t = np.linspace(-span, span, 4001)
        phase = np.unwrap(np.angle(p.envelope(t)))
        dnum = -np.gradient(phase, t)
        want = p.instantaneous_frequency(t)
        mask = np.abs(want) > 1e-9
        if mask.any():
            rel = np.abs(dnum[mask] - want[mask]) / np.abs(want[mask])
            # exclude the two window-edge one-sided differences
            assert np.max(rel[2:-2] if rel.size > 4 else rel) < 1e-6
        else:
            assert np.max(np.abs(dnum)) < 1e-9


class TestEnergyInvariance:
    def test_pulse_energy_independent_of_chirp(self):
        dw = 0.1525
        energies = []
        for a in (0.0, 10.0, -10.0, 1e4, -1e4):
            p = make(delta_omega=dw, phi2=a / dw ** 2)
            t = np.linspace(-8 * p.duration, 8 * p.duration, 40001)
            f = p.envelope(t)
            energies.append(np.trapezoid(np.abs(f) ** 2, t))
        base = energies[0]
        for e in energies[1:]:
            assert e == pytest.approx(base, rel=1e-8)
