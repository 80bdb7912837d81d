"""Gauss-sum factoring simulator.

Closed-form excitation amplitudes for three interference-based factoring
schemes (two-photon ladder, Floquet ladder, pulse train), readout rules that
turn the fluorescence traces into verified factors, and direct-integration
oracles for every closed form.
"""

__version__ = "1.0.0"

from ._backend import BACKEND, available_backends  # noqa: E402
from .analysis import (  # noqa: E402
    FactorReport,
    SignalTrace,
    assemble_factorization,
    detect_line_origin,
    detect_peaks,
    detect_unit_modulus,
    detect_zeros,
    scan,
)
from .errors import (  # noqa: E402
    EncodingError,
    FactorContradictionError,
    NoFitError,
    QuadratureAccuracyError,
)
from .floquet import FloquetSystem, floquet_amplitude, floquet_amplitude_grid  # noqa: E402
from .gauss_sums import (  # noqa: E402
    UniformSumSpec,
    WeightedGaussSumSpec,
    continuous_S,
    generic_sum,
    quadratic_S,
    reciprocal_A,
    truncated_A,
    uniform_weights,
)
from .pulse import ChirpedPulse  # noqa: E402
from .pulse_train import PulseTrainSystem, pt_amplitude, pt_discrete_scan  # noqa: E402
from .two_photon import (  # noqa: E402
    TptSystem,
    dimensionless_chirp,
    encode_n,
    rescale_trace,
    tpt_amplitude,
    tpt_amplitude_grid,
    tpt_weight,
)

__all__ = [
    "__version__",
    "BACKEND",
    "available_backends",
    "ChirpedPulse",
    "TptSystem",
    "FloquetSystem",
    "PulseTrainSystem",
    "SignalTrace",
    "FactorReport",
    "EncodingError",
    "FactorContradictionError",
    "NoFitError",
    "QuadratureAccuracyError",
    "WeightedGaussSumSpec",
    "UniformSumSpec",
    "uniform_weights",
    "generic_sum",
    "continuous_S",
    "quadratic_S",
    "reciprocal_A",
    "truncated_A",
    "encode_n",
    "dimensionless_chirp",
    "tpt_weight",
    "tpt_amplitude",
    "tpt_amplitude_grid",
    "rescale_trace",
    "floquet_amplitude",
    "floquet_amplitude_grid",
    "pt_amplitude",
    "pt_discrete_scan",
    "scan",
    "detect_peaks",
    "detect_zeros",
    "detect_line_origin",
    "detect_unit_modulus",
    "assemble_factorization",
]
