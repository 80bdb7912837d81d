"""Select the numeric kernel backend at import time.

The compiled extension is preferred when present; the numpy implementation
is the fallback. ``GAUSSFACTOR_BACKEND=python|compiled`` forces the choice
(``compiled`` raises if the extension is missing, instead of silently
degrading -- useful in benchmarks and CI).
"""
import os

from . import _pykernels

_forced = os.environ.get("GAUSSFACTOR_BACKEND", "").strip().lower()

if _forced == "python":
    kernels = _pykernels
elif _forced == "compiled":
    from . import _ckernels as kernels  # ImportError is the desired failure
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.BACKEND_NAME


def available_backends():
    """Names of importable kernel backends."""
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
        names.append("compiled")
    except ImportError:
        pass
    return names


def get_kernels(name=None):
    """Kernel module by name ('python' or 'compiled'); default is the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
