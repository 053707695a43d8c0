"""Sweep-kernel selection.

The spectrum tracer's inner loop (determinant polynomials and their real
roots along a grid sweep) exists twice: a Cython+LAPACK extension and a
pure-numpy fallback.  The compiled one is preferred at import; set
FUCIK_PURE=1 to force the fallback.  ``benchmarks/bench_sweep.py`` compares
the two.
"""

from __future__ import annotations

import os

from . import _sweep_py

if os.environ.get("FUCIK_PURE", "") == "1":
    _impl = _sweep_py
    KERNEL_NAME = "python"
else:
    try:
        from . import _sweep_cy as _impl  # type: ignore[no-redef]

        KERNEL_NAME = "compiled"
    except ImportError:
        _impl = _sweep_py
        KERNEL_NAME = "python"

sweep_pattern = _impl.sweep_pattern


def get_sweep(name: str | None = None):
    """Return a sweep_pattern implementation by name (None = default)."""
    if name is None:
        return sweep_pattern
    if name == "python":
        return _sweep_py.sweep_pattern
    if name == "compiled":
        from . import _sweep_cy  # raises ImportError when not built

        return _sweep_cy.sweep_pattern
    raise ValueError(f"unknown kernel {name!r} (expected 'python' or 'compiled')")
