"""Build script: compiles the optional Keccak round-function kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile only costs speed.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "keyak._keccak_kernel",
                ["src/keyak/_keccak_kernel.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
