"""Gauss-sum kernels shared by the three physical schemes.

All sums take explicit weights; nothing here invents a weight model. Phases
with integer structure (quadratic residues, divisor checks) are reduced in
exact integer arithmetic so that constructive-interference cases come out
exactly, even for m^2 N products far beyond 2^53.
"""
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels

__all__ = [
    "WeightedGaussSumSpec",
    "UniformSumSpec",
    "weight_arrays",
    "uniform_weights",
    "generic_sum",
    "generic_sum_grid",
    "continuous_S",
    "continuous_S_grid",
    "quadratic_S",
    "reciprocal_A",
    "truncated_A",
]


def weight_arrays(weights):
    """Normalize a weight mapping to (indices, values) integer/complex arrays.

    Accepts an iterable of (m, w) pairs or a dict {m: w}. Indices must be
    strictly increasing.
    """
    if isinstance(weights, dict):
        items = sorted(weights.items())
        idx = np.array([m for m, _ in items], dtype=np.int64)
        val = np.array([w for _, w in items], dtype=np.complex128)
    else:
        pairs = list(weights)
        idx = np.array([int(m) for m, _ in pairs], dtype=np.int64)
        val = np.array([w for _, w in pairs], dtype=np.complex128)
    if idx.size == 0:
        raise ValueError("empty weight list")
    if np.any(np.diff(idx) <= 0):
        raise ValueError("weight indices must be strictly increasing")
    return idx, val


def uniform_weights(m_lo, m_hi, value=None):
    """Constant weights on m in [m_lo, m_hi]; default value 1/(number of terms)."""
    if m_hi < m_lo:
        raise ValueError("m_hi < m_lo")
    count = m_hi - m_lo + 1
    v = 1.0 / count if value is None else value
    return [(m, v) for m in range(m_lo, m_hi + 1)]


@dataclass(frozen=True)
class WeightedGaussSumSpec:
    """S(xi; A, B) = sum_m w_m exp[2 pi i (m/A + m^2/B) xi]."""

    weights: object
    A: float
    B: float
    indices: np.ndarray = field(init=False, repr=False)
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        idx, val = weight_arrays(self.weights)
        if self.B == 0:
            raise ValueError("B must be nonzero")
        if self.A == 0:
            raise ValueError("A must be nonzero")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    def phase_coefficients(self):
        """Cycles of phase per unit xi, split (integer part, remainder)."""
        m = self.indices.astype(np.float64)
        a = float(self.A)
        b = float(self.B)
        if a in (1.0, -1.0) and b == round(b) and abs(b) <= 2 ** 53:
            # exact integer/fraction split for lattice sums
            bi = int(b)
            ci = np.empty(m.size)
            cf = np.empty(m.size)
            for i, mi in enumerate(self.indices):
                mi = int(mi)
                q, r = divmod(mi * mi, bi)
                ci[i] = float(int(a) * mi + q)
                cf[i] = r / bi
            return ci, cf
        return np.zeros(m.size), m / a + (m * m) / b


def generic_sum(spec, xi):
    """S(xi; A, B) at a single xi."""
    return generic_sum_grid(spec, np.array([float(xi)]))[0]


def generic_sum_grid(spec, xi):
    """S(xi; A, B) over an array of xi values."""
    ci, cf = spec.phase_coefficients()
    return kernels.phase_sum_grid(ci, cf, spec.values, np.asarray(xi, dtype=np.float64))


def continuous_S(n, weights, sign, xi):
    """sum_m w_m exp[2 pi i (sign m + m^2/n) xi]; sign is +1 or -1."""
    return continuous_S_grid(n, weights, sign, np.array([float(xi)]))[0]


def continuous_S_grid(n, weights, sign, xi):
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    spec = WeightedGaussSumSpec(weights, A=float(sign), B=float(n))
    return generic_sum_grid(spec, xi)


def quadratic_S(n, weights, ell):
    """sum_m w_m exp[2 pi i m^2 ell / n] with exact residue phases."""
    n = int(n)
    ell = int(ell)
    if ell < 0:
        raise ValueError("ell must be >= 0")
    idx, val = weight_arrays(weights)
    return kernels.residue_quad_sum(idx, val, ell, n, +1)


@dataclass(frozen=True)
class UniformSumSpec:
    """Uniform-weight reciprocal sum: M half-width, N the encoded integer."""

    M: int
    N: int

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be >= 1")
        if self.N < 1:
            raise ValueError("N must be >= 1")


def reciprocal_A(spec, xi):
    """A_N(xi) = (1/(2M+1)) sum_{n=-M}^{M} exp[-2 pi i n^2 N / xi].

    Equals exactly 1 when xi is a divisor of N (every phase an integer
    number of cycles). xi = 0 is a pole and raises ZeroDivisionError.
    """
    xi = float(xi)
    if xi == 0.0:
        raise ZeroDivisionError("reciprocal_A has a pole at xi = 0")
    m = spec.M
    tvals = np.array(
        [n * n * spec.N for n in range(-m, m + 1)], dtype=np.float64
    )
    return kernels.recip_phase_sum(tvals, xi, -1) / (2 * m + 1)


def truncated_A(n, m_terms, ell):
    """(1/(M+1)) sum_{m=0}^{M} exp(-2 pi i m^2 N / ell), the one-sided sum."""
    n = int(n)
    ell = int(ell)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if m_terms < 0:
        raise ValueError("M must be >= 0")
    idx = np.arange(0, m_terms + 1, dtype=np.int64)
    val = np.ones(m_terms + 1, dtype=np.complex128)
    return kernels.residue_quad_sum(idx, val, n, ell, -1) / (m_terms + 1)
