"""Command-line front end.

Subcommands: tpt, floquet, pulsetrain, gauss-sum, encode, verify-oracle.
Runs write a trace CSV (``xi,re,im,abs2`` after a ``#`` header block), a
structured factor report, and optionally an SVG plot. Exit codes: 0 success,
2 validation error, 3 computation error, 4 divisibility contradiction.
"""
import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from . import analysis, floquet, gauss_sums, pulse_train, two_photon
from ._backend import BACKEND
from .errors import EncodingError, FactorContradictionError, QuadratureAccuracyError
from .pulse import ChirpedPulse
from .tracefile import write_svg_plot, write_trace_csv

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3
EXIT_CONTRADICTION = 4

DEFAULT_BIG_DELTA = 0.003  # fs^-1, manifold / modulation spacing

PRESETS = {
    "paper-fig-n15": dict(
        scheme="tpt", n=15, delta=0.0225, big_delta=0.003, delta_omega=0.1525,
        m_lower=11, m_upper=11, phi2=-465424.0, scan="0:8:200",
        detector="peak", candidates="2,3,5,7",
    ),
    "paper-fig-n21": dict(
        scheme="floquet", n=21, big_delta=0.003, delta=0.063,
        delta_n=12.71, kappa_s=100, phi=math.pi / 2, scan="0:8:200",
        detector="peak", candidates="2,3,5,7",
    ),
    "paper-fig-n105": dict(
        scheme="floquet", n=105, big_delta=0.003, delta=0.315,
        delta_n=90.0, kappa_s=100000, phi=math.pi / 2, ells="2..35",
        detector="line",
    ),
    "paper-fig-n1911": dict(
        scheme="pulsetrain", n=1911, period=1.0, pulses=21, ells="2..44",
        detector="unit",
    ),
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed the message; normalize bad usage to 2
        return EXIT_VALIDATION if exc.code not in (0, None) else 0
    if args.command is None:
        parser.print_help()
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except (EncodingError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FactorContradictionError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (QuadratureAccuracyError, OverflowError, ZeroDivisionError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gaussfactor",
        description="Factor integers from simulated Gauss-sum fluorescence traces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="integer to encode and factor")
    common.add_argument("--preset", choices=sorted(PRESETS), help="pin all parameters from a reference scenario")
    common.add_argument("--config", help="flat key=value file; CLI flags override it")
    common.add_argument("--scan", help="continuous scan lo:hi:samples_per_unit")
    common.add_argument("--ells", help="discrete trials, e.g. 2..44 or 3,5,7")
    common.add_argument("--detector", choices=["peak", "zero", "line", "unit"])
    common.add_argument("--candidates", help="candidate trial factors (same syntax as --ells)")
    common.add_argument("--out", default=None, help="output directory (default .)")
    common.add_argument("--plot", action="store_true", help="also write an SVG plot")
    common.add_argument("--threads", type=int, default=None, help="worker threads for trace scans")
    common.add_argument("--seed", type=int, default=None, help="seed echoed into headers (randomized suites only)")

    p_tpt = sub.add_parser("tpt", parents=[common], help="two-photon ladder scheme")
    p_tpt.add_argument("--delta", type=float, help="central offset delta (fs^-1)")
    p_tpt.add_argument("--big-delta", type=float, help="manifold spacing Delta (fs^-1)")
    p_tpt.add_argument("--delta-omega", type=float, help="pulse bandwidth (fs^-1)")
    p_tpt.add_argument("--phi2", type=float, help="quadratic spectral phase (fs^2)")
    p_tpt.add_argument("--m-lower", type=int, help="manifold extent below the reference state")
    p_tpt.add_argument("--m-upper", type=int, help="manifold extent above the reference state")
    p_tpt.set_defaults(func=cmd_tpt)

    p_fl = sub.add_parser("floquet", parents=[common], help="modulated two-level scheme")
    p_fl.add_argument("--delta", type=float, help="detuning delta (fs^-1)")
    p_fl.add_argument("--big-delta", type=float, help="modulation frequency Delta (fs^-1)")
    p_fl.add_argument("--delta-n", type=float, help="weight width delta_omega/Delta")
    p_fl.add_argument("--kappa-s", type=int, help="modulation index via kappa = 2 pi s + pi/4")
    p_fl.add_argument("--phi", type=float, help="modulation phase (radians)")
    p_fl.set_defaults(func=cmd_floquet)

    p_pt = sub.add_parser("pulsetrain", parents=[common], help="swept two-level + pulse train")
    p_pt.add_argument("--period", type=float, help="pulse separation T (fs)")
    p_pt.add_argument("--pulses", type=int, help="total pulse count 2M+1 (odd)")
    p_pt.set_defaults(func=cmd_pulsetrain)

    p_gs = sub.add_parser("gauss-sum", help="evaluate one Gauss-sum kernel directly")
    p_gs.add_argument("--kind", required=True, choices=["A", "truncated", "S", "quadratic"])
    p_gs.add_argument("--n", type=int, required=True)
    p_gs.add_argument("--m", type=int, default=1, help="half-width / term count parameter")
    p_gs.add_argument("--ell", type=float, required=True, help="trial argument xi or ell")
    p_gs.add_argument("--sign", type=int, default=1, choices=[1, -1], help="linear-phase sign for kind S")
    p_gs.set_defaults(func=cmd_gauss_sum)

    p_enc = sub.add_parser("encode", parents=[common], help="print the physical parameters encoding N")
    p_enc.add_argument("--scheme", choices=["tpt", "floquet", "pulsetrain"], required=False)
    p_enc.add_argument("--big-delta", type=float)
    p_enc.add_argument("--period", type=float)
    p_enc.set_defaults(func=cmd_encode)

    p_vo = sub.add_parser("verify-oracle", help="compare closed forms against direct integration")
    p_vo.add_argument("--n", type=int, default=21)
    p_vo.add_argument("--fast", action="store_true", help="reduced node budget")
    p_vo.set_defaults(func=cmd_verify_oracle)
    return parser


# ----------------------------------------------------------------------------
# argument plumbing
# ----------------------------------------------------------------------------

def _load_config(path):
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        if not _:
            raise ValueError(f"config line {raw!r} is not key = value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _merged(args, scheme):
    """Effective settings: preset < config file < explicit CLI flags."""
    merged = {}
    if getattr(args, "preset", None):
        preset = PRESETS[args.preset]
        if preset["scheme"] != scheme:
            raise ValueError(
                f"preset {args.preset} belongs to scheme {preset['scheme']!r}"
            )
        merged.update(preset)
    if getattr(args, "config", None):
        merged.update(_load_config(args.config))
    for key, value in vars(args).items():
        if key in ("func", "command", "preset", "config"):
            continue
        if value is not None and value is not False:
            merged[key] = value
    return merged


def _parse_scan(text):
    try:
        lo, hi, density = text.split(":")
        return float(lo), float(hi), int(density)
    except Exception:
        raise ValueError(f"--scan wants lo:hi:density, got {text!r}")


def _parse_ells(text):
    text = str(text)
    if ".." in text:
        lo, _, hi = text.partition("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in text.split(",") if tok]


def _scan_grid(model, lo, hi, density, threads):
    count = int(round((hi - lo) * density)) + 1
    xi = lo + np.arange(count) / density
    if threads and int(threads) > 1:
        chunks = np.array_split(np.arange(count), int(threads))
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            parts = list(pool.map(lambda idx: model(xi[idx]), chunks))
        amp = np.concatenate(parts)
    else:
        amp = model(xi)
    return xi, np.asarray(amp, dtype=np.complex128)


def _float(merged, key, default=None):
    value = merged.get(key, default)
    if value is None:
        raise ValueError(f"missing required parameter {key!r}")
    return float(value)


def _int(merged, key, default=None):
    value = merged.get(key, default)
    if value is None:
        raise ValueError(f"missing required parameter {key!r}")
    return int(value)


# ----------------------------------------------------------------------------
# reporting
# ----------------------------------------------------------------------------

def _write_report(path, report, assembled, header):
    lines = [f"{k} = {v}" for k, v in header.items()]
    lines.append(f"rule = {report.rule}")
    lines.append("trials:")
    for ell, score, verdict in report.trials:
        lines.append(f"  ell={ell} score={score!r} verdict={verdict}")
    lines.append(
        "factors_found = " + (", ".join(map(str, report.factors_found)) or "(none)")
    )
    if report.false_positives:
        lines.append(
            "false_positives = " + ", ".join(map(str, report.false_positives))
        )
    if assembled is not None:
        pretty = " * ".join(f"{p}^{e}" for p, e in assembled)
        lines.append(f"assembled = {pretty}")
    for key, value in sorted(report.metadata.items()):
        lines.append(f"meta.{key} = {value}")
    Path(path).write_text("\n".join(lines) + "\n")
    return lines


def _finish_run(out_dir, name, report, n, header, xi, amp, trace_values, plot):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_trace_csv(out / f"{name}-trace.csv", xi, amp, header)
    assembled = None
    if report.factors_found:
        assembled = analysis.assemble_factorization(n, report.factors_found, report.rule)
    lines = _write_report(out / f"{name}-report.txt", report, assembled, header)
    if plot:
        marks = [ell for ell, _, _ in report.trials]
        write_svg_plot(
            out / f"{name}-trace.svg", xi, trace_values,
            title=f"{name} N={n}", marks=marks,
        )
    print("\n".join(lines))
    if report.false_positives:
        print(
            f"warning: readout flagged non-divisors {report.false_positives}; "
            "kept out of factors_found",
            file=sys.stderr,
        )
        return EXIT_CONTRADICTION
    return EXIT_OK


def _base_header(scheme, n, merged):
    header = {
        "generator": f"gaussfactor {__version__} ({BACKEND} kernels)",
        "scheme": scheme,
        "n": n,
    }
    if merged.get("seed") is not None:
        header["seed"] = merged["seed"]
    return header


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------

def cmd_tpt(args):
    merged = _merged(args, "tpt")
    n = _int(merged, "n")
    big_delta = _float(merged, "big_delta", DEFAULT_BIG_DELTA)
    delta = _float(merged, "delta", n * big_delta / 2.0)
    delta_omega = _float(merged, "delta_omega", 0.1525)
    m_default = math.ceil(n / 2)
    m_lower = _int(merged, "m_lower", m_default + (0 if m_default > n / 2 else 1))
    m_upper = _int(merged, "m_upper", m_lower)
    phi2 = _float(merged, "phi2", two_photon.phi2_for_chirp(delta, big_delta, -10.0))
    pulse = ChirpedPulse(omega_L=2.35, delta_omega=delta_omega, phi2=phi2)
    sys_ = two_photon.TptSystem(
        delta=delta, big_delta=big_delta, m_lower=m_lower, m_upper=m_upper, pulse=pulse
    )
    if sys_.n_encoded != n:
        raise EncodingError(f"delta/Delta encode N={sys_.n_encoded}, not {n}")
    lo, hi, density = _parse_scan(merged.get("scan", f"0:{math.isqrt(n) + 1}:200"))
    xi, amp = _scan_grid(
        lambda grid: two_photon.tpt_amplitude_grid(sys_, grid),
        lo, hi, density, merged.get("threads"),
    )
    trace = analysis.SignalTrace(xi, np.abs(amp) ** 2, "tpt", n).normalize()
    candidates = _parse_ells(merged.get("candidates", "")) or analysis.default_candidates(n)
    detector = merged.get("detector", "peak")
    if detector == "peak":
        report = analysis.detect_peaks(trace, candidates)
    elif detector == "zero":
        report = analysis.detect_zeros(trace, candidates)
    else:
        raise ValueError(f"detector {detector!r} does not apply to a continuous tpt trace")
    header = _base_header("tpt", n, merged)
    header.update(
        delta=delta, big_delta=big_delta, delta_omega=delta_omega, phi2=phi2,
        m_lower=m_lower, m_upper=m_upper, scan=f"{lo}:{hi}:{density}",
        detector=detector, normalization="trace max",
    )
    return _finish_run(
        merged.get("out", "."), f"tpt-n{n}", report, n, header, xi, amp,
        trace.values, merged.get("plot", False),
    )


def _floquet_system(merged, n):
    big_delta = _float(merged, "big_delta", DEFAULT_BIG_DELTA)
    delta = _float(merged, "delta", n * big_delta)
    delta_n = _float(merged, "delta_n", 0.6 * n)
    s = _int(merged, "kappa_s", max(100, 10 * n * n))
    kappa = 2.0 * math.pi * s + math.pi / 4.0
    phi = _float(merged, "phi", math.pi / 2.0)
    pulse = ChirpedPulse(omega_L=2.35, delta_omega=delta_n * big_delta, phi2=0.0)
    sys_ = floquet.FloquetSystem(
        delta=delta, big_delta=big_delta, kappa=kappa, phi=phi, pulse=pulse
    )
    if sys_.n_encoded != n:
        raise EncodingError(f"delta/Delta encode N={sys_.n_encoded}, not {n}")
    return sys_, dict(
        delta=delta, big_delta=big_delta, delta_n=delta_n, kappa=kappa, phi=phi
    )


def cmd_floquet(args):
    merged = _merged(args, "floquet")
    n = _int(merged, "n")
    sys_, params = _floquet_system(merged, n)
    header = _base_header("floquet", n, merged)
    header.update(params)
    detector = merged.get("detector")
    if merged.get("ells"):
        ells = _parse_ells(merged["ells"])
        xi = np.array([float(e) for e in ells])
        amp = np.array(
            [floquet.floquet_amplitude(sys_, float(e)) for e in ells],
            dtype=np.complex128,
        )
        signal = (np.abs(amp) ** 2).tolist()
        detector = detector or "line"
        points = list(zip(ells, signal))
        if detector == "line":
            report = analysis.detect_line_origin(points, n=n)
        elif detector == "unit":
            peak = max(s for _, s in points) or 1.0
            report = analysis.detect_unit_modulus(
                [(e, s / peak) for e, s in points], n=n
            )
        else:
            raise ValueError(f"detector {detector!r} does not apply to a discrete scan")
        header.update(ells=merged["ells"], detector=detector, normalization="raw")
        return _finish_run(
            merged.get("out", "."), f"floquet-n{n}", report, n, header, xi, amp,
            np.asarray(signal), merged.get("plot", False),
        )
    lo, hi, density = _parse_scan(merged.get("scan", f"0:{math.isqrt(n) + 1}:200"))
    xi, amp = _scan_grid(
        lambda grid: floquet.floquet_amplitude_grid(sys_, grid),
        lo, hi, density, merged.get("threads"),
    )
    trace = analysis.SignalTrace(xi, np.abs(amp) ** 2, "floquet", n).normalize()
    candidates = _parse_ells(merged.get("candidates", "")) or analysis.default_candidates(n)
    detector = detector or "peak"
    if detector == "peak":
        report = analysis.detect_peaks(trace, candidates)
    elif detector == "zero":
        report = analysis.detect_zeros(trace, candidates)
    else:
        raise ValueError(f"detector {detector!r} does not apply to a continuous trace")
    header.update(
        scan=f"{lo}:{hi}:{density}", detector=detector, normalization="trace max"
    )
    return _finish_run(
        merged.get("out", "."), f"floquet-n{n}", report, n, header, xi, amp,
        trace.values, merged.get("plot", False),
    )


def cmd_pulsetrain(args):
    merged = _merged(args, "pulsetrain")
    n = _int(merged, "n")
    period = _float(merged, "period", 1.0)
    pulses = _int(merged, "pulses", 21)
    if pulses % 2 == 0 or pulses < 3:
        raise ValueError("--pulses must be an odd count >= 3 (train has 2M+1 pulses)")
    m = (pulses - 1) // 2
    delta = 2.0 * math.pi * n / period
    ells = _parse_ells(merged.get("ells", f"2..{math.isqrt(n) + 1}"))
    sys_ = pulse_train.PulseTrainSystem(
        delta=delta, period=period,
        omega_ee=pulse_train.omega_ee_for_trial(delta, max(ells)),
        m_pulses=m,
    )
    scores = pulse_train.pt_discrete_scan(sys_, ells)
    detector = merged.get("detector", "unit")
    if detector != "unit":
        raise ValueError("pulse-train readout uses the unit-modulus rule")
    report = analysis.detect_unit_modulus(list(zip(ells, scores)), n=n)
    xi = np.array([float(e) for e in ells])
    amp = np.array(
        [gauss_sums.reciprocal_A(sys_.spec(), float(e)) for e in ells],
        dtype=np.complex128,
    )
    header = _base_header("pulsetrain", n, merged)
    header.update(
        period=period, delta=delta, pulses=pulses,
        ells=merged.get("ells", f"2..{math.isqrt(n) + 1}"), detector="unit",
        normalization="raw |A| in [0,1]",
    )
    return _finish_run(
        merged.get("out", "."), f"pulsetrain-n{n}", report, n, header, xi, amp,
        np.abs(amp), merged.get("plot", False),
    )


def cmd_gauss_sum(args):
    n = args.n
    if args.kind == "A":
        spec = gauss_sums.UniformSumSpec(M=args.m, N=n)
        value = gauss_sums.reciprocal_A(spec, args.ell)
    elif args.kind == "truncated":
        value = gauss_sums.truncated_A(n, args.m, int(args.ell))
    elif args.kind == "quadratic":
        weights = gauss_sums.uniform_weights(-args.m, args.m)
        value = gauss_sums.quadratic_S(n, weights, int(args.ell))
    else:
        weights = gauss_sums.uniform_weights(-args.m, args.m)
        value = gauss_sums.continuous_S(n, weights, args.sign, args.ell)
    print(f"{value.real!r} {'+' if value.imag >= 0 else '-'} {abs(value.imag)!r}i")
    return EXIT_OK


def cmd_encode(args):
    merged = _merged(args, args.scheme or "")
    n = _int(merged, "n")
    if n < 2:
        raise ValueError("need N >= 2")
    scheme = merged.get("scheme") or "tpt"
    print(f"scheme = {scheme}")
    print(f"n = {n}")
    if scheme == "tpt":
        big_delta = _float(merged, "big_delta", DEFAULT_BIG_DELTA)
        delta = n * big_delta / 2.0
        print(f"big_delta = {big_delta!r}")
        print(f"delta = {delta!r}")
        print(f"xi_unit_phi2 = {two_photon.phi2_for_chirp(delta, big_delta, 1.0)!r}")
    elif scheme == "floquet":
        big_delta = _float(merged, "big_delta", DEFAULT_BIG_DELTA)
        delta = n * big_delta
        print(f"big_delta = {big_delta!r}")
        print(f"delta = {delta!r}")
        print(f"delta_omega_default = {0.6 * n * big_delta!r}")
        print(f"kappa_default = {2 * math.pi * max(100, 10 * n * n) + math.pi / 4!r}")
    else:
        period = _float(merged, "period", 1.0)
        delta = 2.0 * math.pi * n / period
        print(f"period = {period!r}")
        print(f"delta = {delta!r}")
        print(f"omega_ee_for_ell_3 = {pulse_train.omega_ee_for_trial(delta, 3)!r}")
    return EXIT_OK


def cmd_verify_oracle(args):
    from . import oracle

    n = args.n
    big_delta = 0.003
    delta_n = 12.71
    pulse = ChirpedPulse(omega_L=2.35, delta_omega=delta_n * big_delta, phi2=0.0)
    sys_ = floquet.FloquetSystem(
        delta=n * big_delta, big_delta=big_delta,
        kappa=2 * math.pi * 100 + math.pi / 4, phi=math.pi / 2, pulse=pulse,
    )
    xi_probe = 3.0
    phi2 = math.pi * xi_probe / (sys_.delta * big_delta)
    ok = True

    checks = [0, n, n // 2]
    worst = 0.0
    for nn in checks:
        closed = floquet.sideband_integral_hn(sys_, nn, phi2=phi2)
        direct = oracle.quadrature_hn(sys_, nn, phi2=phi2)
        rel = abs(direct - closed) / abs(closed)
        worst = max(worst, rel)
    line = f"h_n closed form vs quadrature (n in {checks}): max rel {worst:.2e}"
    if worst < 1e-6:
        print("PASS " + line)
    else:
        print("FAIL " + line)
        ok = False

    spec = oracle.DriveSpec(
        modulation=oracle.SinusoidalModulation(
            omega_ee=sys_.kappa * big_delta, big_delta=big_delta, phi=sys_.phi
        ),
        envelope=pulse.with_phi2(phi2),
        delta=sys_.delta,
        t0=-8.0 * pulse.with_phi2(phi2).duration,
        t1=8.0 * pulse.with_phi2(phi2).duration,
    )
    direct = oracle.quadrature_amplitude(spec, abs_tol=1e-6 if args.fast else 1e-8)
    model = floquet.floquet_amplitude(sys_, xi_probe)
    scale = 2.0 * math.pi / big_delta
    rel = abs(abs(direct) / scale - abs(model)) / abs(model)
    line = f"floquet amplitude vs direct integration at xi={xi_probe}: rel {rel:.2e}"
    if rel < 1e-5:
        print("PASS " + line)
    else:
        print("FAIL " + line)
        ok = False
    return EXIT_OK if ok else EXIT_COMPUTATION


def main_entry():
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
