"""Build script: compiles the optional enumeration kernel if Cython is present.

The package is fully functional without the extension (a pure-Python twin is
selected at import time), so any build failure here downgrades to a warning.
"""

import warnings

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("polyptych._enum", ["src/polyptych/_enum.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - environment dependent
    warnings.warn(f"building without compiled enumeration kernel: {exc}")

setup(ext_modules=ext_modules)
