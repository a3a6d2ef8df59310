"""Selects the coefficient kernel: compiled extension if available, else pure Python.

Set QSERIES_PURE=1 to force the pure-Python kernel (used by the benchmark
to compare both implementations).
"""

import os

if os.environ.get("QSERIES_PURE"):
    from qseries import _kernel_py as _impl
else:
    try:
        from qseries import _coeffkernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from qseries import _kernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
mul_dense = _impl.mul_dense
mul_binom = _impl.mul_binom
div_binom = _impl.div_binom
inv_dense = _impl.inv_dense
add_shifted = _impl.add_shifted
scale = _impl.scale
