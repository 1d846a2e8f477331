"""Build script.

The compiled fingerprint kernel is optional: if Cython or a C compiler is
missing the package installs anyway and the pure-Python kernel is selected
at import time.
"""

import warnings

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("matinv2._kernel", ["src/matinv2/_kernel.pyx"])],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - environment dependent
    warnings.warn(f"compiled kernel skipped, pure-Python fallback will be used: {exc}")

setup(ext_modules=ext_modules)
