"""Build script: compiles the optional geometry kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time), so a failed compile only costs speed.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/cobb/_kernels.pyx",
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
