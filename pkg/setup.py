"""Build script: compiles the optional coefficient kernel.

The compiled extension only accelerates the inner coefficient loops; the
package is fully functional without it (qseries.kernel falls back to the
pure-Python implementation at import time).
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qseries/_coeffkernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    import warnings

    warnings.warn(f"Cython unavailable, building pure-Python only: {exc}")

setup(ext_modules=ext_modules)
