"""Build the compiled sampling kernel when Cython and a C toolchain are
available; the package falls back to the numpy kernel at import otherwise."""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "rankfreq._kernels._alias_cy",
                ["src/rankfreq/_kernels/_alias_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
else:
    extensions = []

setup(ext_modules=extensions)
