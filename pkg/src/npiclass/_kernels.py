"""Backend selection for the blow-up simulation.

The compiled extension is used when it imported and every multiplicity fits
in 62 bits; otherwise the pure-Python version runs.  Setting the environment
variable ``NPICLASS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _blowup_py

try:
    from . import _blowup as _compiled
except ImportError:  # extension not built
    _compiled = None

_LIMIT = 1 << 62

HAVE_EXTENSION = _compiled is not None
FORCE_PURE = os.environ.get("NPICLASS_PURE_PYTHON", "") not in ("", "0")


def backend_name() -> str:
    return "cython" if HAVE_EXTENSION and not FORCE_PURE else "python"


def simulate(mults, backend: str | None = None):
    """Dispatch to ``backend`` ("cython" or "python"), or pick automatically."""
    if backend is None:
        backend = backend_name()
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel not available")
        if all(0 < m < _LIMIT for m in mults):
            return _compiled.simulate(mults)
        return _blowup_py.simulate(mults)
    if backend == "python":
        return _blowup_py.simulate(mults)
    raise ValueError(f"unknown backend {backend!r}")
