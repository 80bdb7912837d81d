import numpy as np
import pytest

from gaussfactor import tracefile


@pytest.fixture
def sample(tmp_path):
    xi = np.linspace(0.0, 2.0, 11)
    amp = np.exp(2j * np.pi * xi) * (1.0 + 0.5 * xi)
    path = tmp_path / "t.csv"
    tracefile.write_trace_csv(path, xi, amp, {"scheme": "tpt", "n": 15, "delta": 0.0225})
    return path, xi, amp


class TestCsv:
    def test_round_trip(self, sample):
        path, xi, amp = sample
        header, xi2, amp2 = tracefile.read_trace_csv(path)
        assert header["scheme"] == "tpt"
        assert header["n"] == "15"
        assert np.array_equal(xi, xi2)
        assert np.array_equal(amp, amp2)

    def test_column_order_and_abs2(self, sample):
        path, _, amp = sample
        lines = path.read_text().splitlines()
        data_start = next(i for i, ln in enumerate(lines) if not ln.startswith("#"))
        assert lines[data_start] == "xi,re,im,abs2"
        first = lines[data_start + 1].split(",")
        re, im, abs2 = float(first[1]), float(first[2]), float(first[3])
        assert abs2 == pytest.approx(re * re + im * im, rel=1e-12)

    def test_byte_identical_rewrites(self, sample, tmp_path):
        path, xi, amp = sample
        other = tmp_path / "again.csv"
        tracefile.write_trace_csv(other, xi, amp, {"scheme": "tpt", "n": 15, "delta": 0.0225})
        assert path.read_bytes() == other.read_bytes()

    def test_normalized_view(self, sample):
        path, _, amp = sample
        trace = tracefile.trace_from_csv(path)
        assert trace.N == 15
        assert trace.values.max() == 1.0
        want = np.abs(amp) ** 2
        assert np.allclose(trace.values, want / want.max(), rtol=1e-12)


class TestSvg:
    def test_writes_marks_and_polyline(self, tmp_path):
        xi = np.linspace(0.0, 8.0, 100)
        vals = np.abs(np.sin(xi)) + 0.01
        out = tmp_path / "z.svg"
        tracefile.write_svg_plot(out, xi, vals, title="demo", marks=(3, 5))
        text = out.read_text()
        assert text.startswith("<svg")
        assert "polyline" in text
        assert text.count("stroke-dasharray") == 2
