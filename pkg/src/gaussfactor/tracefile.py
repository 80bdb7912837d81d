"""Trace CSV files and SVG plots.

A trace file is a commented header block (``# key = value``, full parameter
provenance) followed by ``xi,re,im,abs2`` rows. Floats are written with
repr (shortest round-trip), so identical runs produce byte-identical files.
"""
import numpy as np

from .analysis import SignalTrace

__all__ = ["write_trace_csv", "read_trace_csv", "write_svg_plot"]

CSV_COLUMNS = "xi,re,im,abs2"


def write_trace_csv(path, xi, amplitudes, header):
    """Write raw complex amplitudes against xi.

    header is an ordered mapping of provenance keys; the peak |c|^2 goes in
    as ``abs2_max`` so normalized views can be reconstructed.
    """
    xi = np.asarray(xi, dtype=np.float64)
    amp = np.asarray(amplitudes, dtype=np.complex128)
    abs2 = amp.real ** 2 + amp.imag ** 2
    lines = []
    for key, value in header.items():
        lines.append(f"# {key} = {_fmt(value)}")
    lines.append(f"# abs2_max = {_fmt(float(abs2.max()) if abs2.size else 0.0)}")
    lines.append(CSV_COLUMNS)
    for x, c, a2 in zip(xi.tolist(), amp.tolist(), abs2.tolist()):
        lines.append(f"{x!r},{c.real!r},{c.imag!r},{a2!r}")
    text = "\n".join(lines) + "\n"
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def read_trace_csv(path):
    """Read a trace file back into (header dict, xi, amplitudes)."""
    header = {}
    xi = []
    amp = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                header[key.strip()] = value.strip()
                continue
            if line == CSV_COLUMNS:
                continue
            x, re, im, _ = line.split(",")
            xi.append(float(x))
            amp.append(complex(float(re), float(im)))
    return header, np.array(xi), np.array(amp, dtype=np.complex128)


def trace_from_csv(path, scheme="", n=0):
    """Normalized SignalTrace from a trace file (header overrides the args)."""
    header, xi, amp = read_trace_csv(path)
    scheme = header.get("scheme", scheme)
    n = int(header.get("n", n) or 0)
    values = np.abs(amp) ** 2
    return SignalTrace(xi, values, scheme, n).normalize()


def write_svg_plot(path, xi, values, title="", marks=(), width=960, height=480):
    """Minimal deterministic SVG line plot of a trace with vertical marks."""
    xi = np.asarray(xi, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    pad = 50
    x0, x1 = float(xi.min()), float(xi.max())
    y1 = float(values.max()) or 1.0
    sx = (width - 2 * pad) / (x1 - x0 if x1 > x0 else 1.0)
    sy = (height - 2 * pad) / y1

    def px(x):
        return pad + (x - x0) * sx

    def py(y):
        return height - pad - y * sy

    pts = " ".join(f"{px(x):.2f},{py(v):.2f}" for x, v in zip(xi, values))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{pad}" y="25" font-family="monospace" font-size="14">{title}</text>',
    ]
    for mark in marks:
        mx = px(mark)
        parts.append(
            f'<line x1="{mx:.2f}" y1="{py(0):.2f}" x2="{mx:.2f}" y2="{pad}" '
            'stroke="#999" stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<text x="{mx:.2f}" y="{height - pad + 18}" font-family="monospace" '
            f'font-size="12" text-anchor="middle">{mark}</text>'
        )
    parts.append(
        f'<polyline points="{pts}" fill="none" stroke="#1f4e99" stroke-width="1.2"/>'
    )
    parts.append(
        f'<line x1="{pad}" y1="{py(0):.2f}" x2="{width - pad}" y2="{py(0):.2f}" stroke="black"/>'
    )
    parts.append("</svg>")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
