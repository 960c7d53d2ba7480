"""Build hook: compiles the optional exact-arithmetic kernel.

The package is pure Python by default; if Cython and a C compiler are
available, a fixed-width (128-bit) implementation of the segment-pair
kernel is built as `knotcensus._ckernels`.  Every public result is
identical with or without it.  Set KNOTCENSUS_PURE=1 to skip the build.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("KNOTCENSUS_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("knotcensus._ckernels", ["src/knotcensus/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
