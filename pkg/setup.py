"""Build script.

The package works as pure Python.  When Cython and a C compiler are
available, an accelerated extension module (gaplabels._kernels) is built
for the permutation codec inner loops; it is picked up automatically at
import time and can be disabled with GAPLABELS_BACKEND=pure.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("GAPLABELS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/gaplabels/_kernels.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
