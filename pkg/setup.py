"""Build script: compiles the optional Cython search kernel.

The package works without the extension (a pure-Python twin of the kernel
is selected at import time), so any build failure here downgrades to a
source-only install instead of aborting.
"""

import numpy
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
                "gtnsim._svetlichny",
                ["src/gtnsim/_svetlichny.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off keeps the compiled kernel bit-identical
                # to the pure-Python twin (no fused multiply-add).
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
