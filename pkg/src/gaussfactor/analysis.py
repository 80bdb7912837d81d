"""Signal traces, readout rules, and factor assembly.

Four readout rules turn a fluorescence trace (or a discrete point set) into
factor verdicts: peak, zero, line-through-origin, unit-modulus. Every rule
is followed by an integer divisibility check, so a physics false positive
can never survive into ``factors_found``; it lands in ``false_positives``
instead.

Threshold defaults are calibrated on the four reference scenarios shipped
as CLI presets (N = 15, 21, 105, 1911) and are plain keyword arguments.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FactorContradictionError, NoFitError

__all__ = [
    "SignalTrace",
    "FactorReport",
    "scan",
    "detect_peaks",
    "detect_zeros",
    "detect_line_origin",
    "detect_unit_modulus",
    "assemble_factorization",
    "default_candidates",
    "is_prime",
]

TAU_PEAK = 0.4
TAU_ZERO = 0.1
TAU_LINE = 0.2
TAU_UNIT = 1e-6
WINDOW = 0.25


@dataclass(frozen=True)
class SignalTrace:
    """Sampled |c_e|^2 versus xi for one scheme and one encoded N."""

    xi: np.ndarray
    values: np.ndarray
    scheme: str
    N: int
    normalized: bool = False

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if xi.ndim != 1 or xi.shape != values.shape:
            raise ValueError("xi and values must be 1-d arrays of equal length")
        if xi.size > 1 and np.any(np.diff(xi) <= 0):
            raise ValueError("xi must be strictly increasing")
        if np.any(values < 0):
            raise ValueError("trace values must be >= 0")
        if self.normalized and values.size and not math.isclose(
            values.max(), 1.0, rel_tol=0, abs_tol=1e-9
        ):
            raise ValueError("normalized trace must have max value 1")
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "values", values)

    def normalize(self):
        peak = self.values.max()
        if peak == 0.0:
            raise ValueError("cannot normalize an all-zero trace")
        return SignalTrace(self.xi, self.values / peak, self.scheme, self.N, True)

    def rescaled(self, n_prime):
        """Same samples on the stretched axis xi' = (N'/N) xi.

        The relabeling that justifies this keeps N' - N even; odd steps are
        rejected as an encoding mismatch.
        """
        if (n_prime - self.N) % 2 != 0:
            raise ValueError(
                f"rescaling {self.N} -> {n_prime} needs N' - N even"
            )
        factor = n_prime / self.N
        return SignalTrace(
            self.xi * factor, self.values, self.scheme, n_prime, self.normalized
        )


@dataclass
class FactorReport:
    """Per-candidate verdicts plus the divisibility-verified factor list."""

    rule: str
    N: int
    trials: list = field(default_factory=list)  # (ell, score, verdict str)
    factors_found: list = field(default_factory=list)
    false_positives: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add_trial(self, ell, score, physics_factor):
        ell = int(ell)
        score = float(score)
        verdict = "factor" if physics_factor else "non-factor"
        if physics_factor:
            if self.N % ell == 0:
                self.factors_found.append(ell)
            else:
                self.false_positives.append(ell)
                verdict = "factor (fails divisibility)"
        self.trials.append((ell, score, verdict))


def scan(model, xi_min, xi_max, samples_per_unit, scheme="", n=0):
    """Sample |model(xi)|^2 uniformly and return the normalized trace.

    ``model`` maps an array of xi values to complex amplitudes (or already
    nonnegative intensities). A model failure is re-raised with the xi grid
    bounds attached.
    """
    if not xi_min < xi_max:
        raise ValueError("xi_min must be < xi_max")
    if samples_per_unit < 10:
        raise ValueError("samples_per_unit must be >= 10")
    count = int(round((xi_max - xi_min) * samples_per_unit)) + 1
    xi = xi_min + np.arange(count) / samples_per_unit
    try:
        amp = np.asarray(model(xi))
    except Exception as exc:
        raise RuntimeError(
            f"model evaluation failed on xi grid [{xi_min}, {xi_max}]"
        ) from exc
    values = np.abs(amp) ** 2 if np.iscomplexobj(amp) else np.asarray(amp, float)
    return SignalTrace(xi, values, scheme, n).normalize()


def _window_indices(trace, ell, window):
    lo = np.searchsorted(trace.xi, ell - window, side="left")
    hi = np.searchsorted(trace.xi, ell + window, side="right")
    if hi <= lo:
        raise ValueError(f"candidate {ell} is outside the trace range")
    return lo, hi


def detect_peaks(trace, candidates, window=WINDOW, tau_peak=TAU_PEAK):
    """Factor iff the window around ell holds a distinct, centered maximum.

    score(ell) is the trace maximum on [ell-window, ell+window]. A candidate
    passes when (i) its score reaches tau_peak of the best candidate score,
    (ii) the window maximum is an interior local maximum of the trace, and
    (iii) it lies within window/2 of the integer -- a peak merely grazing
    the window edge does not count as "around ell".
    """
    if not 0 < window <= 0.5:
        raise ValueError("window must be in (0, 0.5]")
    report = FactorReport(rule="peak", N=trace.N)
    values = trace.values
    info = {}
    for ell in candidates:
        try:
            lo, hi = _window_indices(trace, ell, window)
        except ValueError as exc:
            _record_candidate_error(report, ell, exc)
            continue
        k = lo + int(np.argmax(values[lo:hi]))
        score = values[k]
        interior = lo < k < hi - 1
        local_max = 0 < k < len(values) - 1 and (
            values[k] >= values[k - 1] and values[k] >= values[k + 1]
        )
        centered = abs(trace.xi[k] - ell) <= window / 2
        info[ell] = (score, interior and local_max and centered)
    best = max((score for score, _ in info.values()), default=0.0)
    for ell, (score, shape_ok) in info.items():
        report.add_trial(ell, score, shape_ok and score >= tau_peak * best)
    report.metadata.update(window=window, tau_peak=tau_peak, best_score=best)
    return report


def _record_candidate_error(report, ell, exc):
    report.trials.append((int(ell), float("nan"), f"error: {exc}"))
    report.metadata.setdefault("errors", []).append((int(ell), str(exc)))


def detect_zeros(trace, candidates, window=WINDOW, tau_zero=TAU_ZERO):
    """Factor iff the trace dips below tau_zero times its median near ell."""
    if not 0 < window <= 0.5:
        raise ValueError("window must be in (0, 0.5]")
    report = FactorReport(rule="zero", N=trace.N)
    median = float(np.median(trace.values))
    threshold = tau_zero * median
    for ell in candidates:
        try:
            lo, hi = _window_indices(trace, ell, window)
        except ValueError as exc:
            _record_candidate_error(report, ell, exc)
            continue
        score = float(trace.values[lo:hi].min())
        report.add_trial(ell, score, score <= threshold)
    report.metadata.update(
        window=window, tau_zero=tau_zero, median=median, threshold=threshold
    )
    return report


def detect_line_origin(points, n=None, tau_line=TAU_LINE, equal_value_rtol=0.05):
    """Factors lie on the top line score = c * ell through the origin.

    The slope starts at max(score/ell) -- suppressed non-factors only ever
    fall below the line -- and is then refit by least squares over the
    accepted set until stable. Points with equal scores (multiples of one
    factor share a value) are grouped in the report metadata.
    """
    points = [(int(ell), float(score)) for ell, score in points]
    if len(points) < 3:
        raise NoFitError("line fit needs at least 3 points")
    if all(score == 0.0 for _, score in points):
        raise NoFitError("all scores are zero; no line to fit")
    report = FactorReport(rule="line-origin", N=0 if n is None else int(n))
    slope = max(score / ell for ell, score in points if ell > 0)
    accepted = None
    for _ in range(50):
        new_accepted = [
            (ell, score)
            for ell, score in points
            if abs(score - slope * ell) <= tau_line * slope * ell
        ]
        if not new_accepted:
            break
        num = sum(ell * score for ell, score in new_accepted)
        den = sum(ell * ell for ell, _ in new_accepted)
        slope = num / den
        if new_accepted == accepted:
            break
        accepted = new_accepted
    accepted_set = {ell for ell, _ in (accepted or [])}
    for ell, score in points:
        on_line = ell in accepted_set
        if n is None:
            verdict = "factor" if on_line else "non-factor"
            if on_line:
                report.factors_found.append(ell)
            report.trials.append((ell, score, verdict))
        else:
            report.add_trial(ell, score, on_line)

    groups = []
    used = set()
    ordered = sorted(points, key=lambda p: p[1])
    for i, (ell_i, s_i) in enumerate(ordered):
        if ell_i in used or s_i == 0.0:
            continue
        group = [ell_i]
        for ell_j, s_j in ordered[i + 1:]:
            if ell_j in used:
                continue
            if abs(s_j - s_i) <= equal_value_rtol * max(abs(s_i), abs(s_j)):
                group.append(ell_j)
        if len(group) > 1:
            groups.append(sorted(group))
            used.update(group)
    report.metadata.update(
        tau_line=tau_line, slope=slope, equal_value_groups=groups
    )
    return report


def detect_unit_modulus(points, n=None, tau_unit=TAU_UNIT):
    """Factor iff the score (a |A_N| modulus in [0, 1]) is 1 within tau_unit."""
    report = FactorReport(rule="unit-modulus", N=0 if n is None else int(n))
    for ell, score in points:
        ell = int(ell)
        score = float(score)
        if score > 1.0 + 1e-9:
            raise ValueError(
                f"score {score} at ell={ell} exceeds 1; not a unit-modulus signal"
            )
        hit = score >= 1.0 - tau_unit
        if n is None:
            report.trials.append((ell, score, "factor" if hit else "non-factor"))
            if hit:
                report.factors_found.append(ell)
        else:
            report.add_trial(ell, score, hit)
    report.metadata.update(tau_unit=tau_unit)
    return report


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def assemble_factorization(n, factors_found, rule=""):
    """Divide verified factors out of n and return [(prime, exponent), ...].

    Composite entries (21, 39, ...) are split by trial division first. A
    non-divisor in the input is a contradiction of the readout rule and
    raises FactorContradictionError. A cofactor above sqrt(n) that survives
    division is appended after a primality check.
    """
    n = int(n)
    primes = set()
    for ell in factors_found:
        ell = int(ell)
        if ell <= 1 or n % ell != 0:
            raise FactorContradictionError(n, ell, rule)
        for p in _trial_division(ell):
            primes.add(p)
    result = []
    remaining = n
    for p in sorted(primes):
        exp = 0
        while remaining % p == 0:
            remaining //= p
            exp += 1
        if exp:
            result.append((p, exp))
    if remaining > 1:
        if is_prime(remaining):
            result.append((remaining, 1))
        else:
            # readout missed a factor <= sqrt(n); report the cofactor as-is
            result.append((remaining, 1))
    return result


def _trial_division(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def default_candidates(n, include_products=False):
    """Primes and prime powers up to sqrt(n); optionally products of them.

    The line-origin readout plots products of factors too, so it gets the
    full divisor-candidate list when include_products is set.
    """
    limit = math.isqrt(n)
    base = [k for k in range(2, limit + 1) if _is_prime_power(k)]
    if include_products:
        return [k for k in range(2, limit + 1)]
    return base


def _is_prime_power(k):
    f = _trial_division(k)
    return len(set(f)) == 1
