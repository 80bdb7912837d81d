import math

import numpy as np
import pytest

from gaussfactor import (
    FactorContradictionError,
    NoFitError,
    SignalTrace,
    assemble_factorization,
    detect_line_origin,
    detect_peaks,
    detect_unit_modulus,
    detect_zeros,
    scan,
)
from gaussfactor import analysis, floquet, pulse_train
from gaussfactor.pulse_train import PulseTrainSystem


def synthetic_trace(peaks, n, width=0.05, lo=0.0, hi=8.0, density=200):
    xi = lo + np.arange(int((hi - lo) * density) + 1) / density
    values = np.full_like(xi, 0.05)
    for center, height in peaks:
        values += height * np.exp(-0.5 * ((xi - center) / width) ** 2)
    return SignalTrace(xi, values, "synthetic", n).normalize()


class TestSignalTrace:
    def test_validation(self):
        with pytest.raises(ValueError):
            SignalTrace(np.array([0.0, 0.0]), np.array([1.0, 1.0]), "t", 4)
        with pytest.raises(ValueError):
            SignalTrace(np.array([0.0, 1.0]), np.array([-1.0, 1.0]), "t", 4)
        with pytest.raises(ValueError):
            SignalTrace(np.array([0.0, 1.0]), np.array([0.5, 0.7]), "t", 4, True)

    def test_normalize(self):
        tr = SignalTrace(np.array([0.0, 1.0]), np.array([2.0, 4.0]), "t", 4)
        assert tr.normalize().values.max() == 1.0


class TestScan:
    def test_single_sample_degenerate_range(self):
        trace = scan(lambda xi: np.full(xi.shape, 3.7 + 0j), 0.0, 1e-9, 10)
        assert trace.xi.size == 1
        assert trace.values[0] == 1.0

    def test_error_wrapped_with_grid(self):
        def bad(xi):
            raise RuntimeError("boom")

        with pytest.raises(RuntimeError, match="xi grid"):
            scan(bad, 0.0, 1.0, 50)

    def test_density_floor(self):
        with pytest.raises(ValueError):
            scan(lambda xi: xi, 0.0, 1.0, 5)


class TestDetectPeaks:
    def test_synthetic_exact(self):
        trace = synthetic_trace([(3.0, 1.0), (5.0, 0.8)], n=15)
        report = detect_peaks(trace, [2, 3, 4, 5, 6, 7])
        assert report.factors_found == [3, 5]
        assert report.false_positives == []

    def test_off_integer_peak_rejected(self):
        trace = synthetic_trace([(3.0, 1.0), (5.21, 0.9)], n=15)
        report = detect_peaks(trace, [3, 5])
        assert report.factors_found == [3]

    def test_divisibility_firewall(self):
        trace = synthetic_trace([(3.0, 1.0), (4.0, 0.9)], n=15)
        report = detect_peaks(trace, [3, 4])
        assert report.factors_found == [3]
        assert report.false_positives == [4]

    def test_candidate_outside_trace_recorded_per_entry(self):
        trace = synthetic_trace([(3.0, 1.0)], n=15, hi=4.0)
        report = detect_peaks(trace, [3, 7])
        assert report.factors_found == [3]
        bad = [t for t in report.trials if t[0] == 7]
        assert len(bad) == 1 and bad[0][2].startswith("error")
        assert report.metadata["errors"][0][0] == 7

    def test_scale_invariance(self):
        trace = synthetic_trace([(3.0, 1.0), (5.0, 0.7)], n=15)
        scaled = SignalTrace(trace.xi, trace.values * 7.3, "synthetic", 15)
        r1 = detect_peaks(trace, [2, 3, 5, 7])
        r2 = detect_peaks(scaled, [2, 3, 5, 7])
        assert [v for _, _, v in r1.trials] == [v for _, _, v in r2.trials]

    def test_window_bounds(self):
        trace = synthetic_trace([(3.0, 1.0)], n=9)
        with pytest.raises(ValueError):
            detect_peaks(trace, [3], window=0.7)


class TestDetectZeros:
    def test_flat_trace_empty(self):
        xi = np.arange(0, 801) / 100.0
        trace = SignalTrace(xi, np.ones_like(xi), "t", 21, True)
        report = detect_zeros(trace, [3, 7])
        assert report.factors_found == []

    def test_synthetic_dips(self):
        xi = np.arange(0, 8 * 200 + 1) / 200.0
        values = np.ones_like(xi)
        for c in (3.0, 7.0):
            values *= 1.0 - 0.999 * np.exp(-0.5 * ((xi - c) / 0.05) ** 2)
        trace = SignalTrace(xi, values, "t", 21).normalize()
        report = detect_zeros(trace, [2, 3, 5, 7])
        assert report.factors_found == [3, 7]

    def test_scale_invariance(self):
        xi = np.arange(0, 8 * 100 + 1) / 100.0
        values = 1.0 - 0.99 * np.exp(-0.5 * ((xi - 3.0) / 0.1) ** 2)
        t1 = SignalTrace(xi, values, "t", 21)
        t2 = SignalTrace(xi, 7.3 * values, "t", 21)
        v1 = [v for _, _, v in detect_zeros(t1, [2, 3]).trials]
        v2 = [v for _, _, v in detect_zeros(t2, [2, 3]).trials]
        assert v1 == v2


class TestDetectLineOrigin:
    def test_perfect_synthetic_line(self):
        points = [(ell, 0.01 * ell) for ell in (3, 5, 7, 15)]
        report = detect_line_origin(points)
        assert report.factors_found == [3, 5, 7, 15]

    def test_too_few_points(self):
        with pytest.raises(NoFitError):
            detect_line_origin([(3, 0.03), (5, 0.05)])

    def test_all_zero_scores(self):
        with pytest.raises(NoFitError):
            detect_line_origin([(3, 0.0), (5, 0.0), (7, 0.0)])

    def test_suppressed_points_rejected(self):
        points = [(2, 0.002), (3, 0.03), (5, 0.05), (6, 0.015), (7, 0.07)]
        report = detect_line_origin(points, n=105)
        assert report.factors_found == [3, 5, 7]

    def test_equal_value_groups_in_metadata(self):
        points = [(3, 0.030), (5, 0.05), (6, 0.0301), (7, 0.07), (12, 0.0299)]
        report = detect_line_origin(points, n=105)
        assert [3, 6, 12] in report.metadata["equal_value_groups"]

    def test_scale_invariance(self):
        points = [(2, 0.002), (3, 0.03), (5, 0.05), (7, 0.07)]
        r1 = detect_line_origin(points, n=105)
        r2 = detect_line_origin([(e, 7.3 * s) for e, s in points], n=105)
        assert [v for _, _, v in r1.trials] == [v for _, _, v in r2.trials]


class TestDetectUnitModulus:
    def test_reference_1911(self):
        sys_ = PulseTrainSystem(
            delta=2 * math.pi * 1911, period=1.0,
            omega_ee=2 * math.pi * 1911, m_pulses=10,
        )
        ells = list(range(2, 45))
        scores = pulse_train.pt_discrete_scan(sys_, ells)
        report = detect_unit_modulus(list(zip(ells, scores)), n=1911)
        assert report.factors_found == [3, 7, 13, 21, 39]
        assert report.false_positives == []

    def test_all_divisors(self):
        report = detect_unit_modulus([(2, 1.0), (3, 1.0)], n=12)
        assert report.factors_found == [2, 3]

    def test_inconsistent_score_rejected(self):
        with pytest.raises(ValueError):
            detect_unit_modulus([(3, 1.5)], n=12)


class TestAssembleFactorization:
    def test_simple(self):
        assert assemble_factorization(15, [3, 5]) == [(3, 1), (5, 1)]

    def test_reference_1911(self):
        got = assemble_factorization(1911, [3, 7, 13, 21, 39])
        assert got == [(3, 1), (7, 2), (13, 1)]

    def test_prime_with_no_findings(self):
        assert assemble_factorization(13, []) == [(13, 1)]

    def test_cofactor_above_sqrt(self):
        assert assemble_factorization(15, [3]) == [(3, 1), (5, 1)]

    def test_contradiction(self):
        with pytest.raises(FactorContradictionError):
            assemble_factorization(15, [4], rule="peak")


class TestRescalingConsistency:
    def test_n15_to_n21_finds_divisors(self, n15_trace):
        from gaussfactor import rescale_trace

        scaled = rescale_trace(n15_trace, 15, 21)
        report = detect_peaks(scaled, [2, 3, 5, 7])
        assert report.factors_found == [3, 7]
        # 2 shows a strong revival on the rescaled axis but fails division
        assert 2 in report.false_positives


class TestCandidates:
    def test_prime_powers_default(self):
        assert analysis.default_candidates(105) == [2, 3, 4, 5, 7, 8, 9]
        assert analysis.default_candidates(7) == [2]

    def test_products_for_line_rule(self):
        assert analysis.default_candidates(105, include_products=True) == list(range(2, 11))


class TestPrimality:
    def test_small_and_carmichael(self):
        assert analysis.is_prime(2) and analysis.is_prime(13)
        assert not analysis.is_prime(1) and not analysis.is_prime(561)
        assert analysis.is_prime(2 ** 61 - 1)


class TestFigureTraces:
    def test_n15_figure_peak_readout(self, n15_trace):
        report = detect_peaks(n15_trace, [2, 3, 4, 5, 6, 7])
        assert report.factors_found == [3, 5]

    def test_n21_figure_zero_readout(self, n21_system_phi0):
        trace = scan(
            lambda grid: floquet.floquet_amplitude_grid(n21_system_phi0, grid),
            0.0, 8.0, 200, scheme="floquet", n=21,
        )
        report = detect_zeros(trace, [2, 3, 5, 7])
        assert report.factors_found == [3, 7]
