"""Backend selection for the hot integration kernels.

The environment variable ``ASISIM_BACKEND`` picks the implementation:

- ``numba`` — require the jitted kernels (raise if numba is unavailable),
- ``numpy`` — force the pure-numpy reference kernels,
- unset / ``auto`` — use numba when importable, else fall back to numpy.

Both backends implement identical algorithms and agree to rounding error;
`benchmarks/bench_kernels.py` compares their speed.
"""

from __future__ import annotations

import os

_choice = os.environ.get("ASISIM_BACKEND", "auto").strip().lower()

if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"ASISIM_BACKEND must be auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    from . import kernels_numpy as _impl
    BACKEND = "numpy"
else:
    try:
        from . import kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import kernels_numpy as _impl
        BACKEND = "numpy"

schrodinger_rk4 = _impl.schrodinger_rk4
schrodinger_dp54 = _impl.schrodinger_dp54
lindblad_rk4 = _impl.lindblad_rk4
lindblad_dp54 = _impl.lindblad_dp54
