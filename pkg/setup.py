"""Build script: compiles the optional rank kernels.

The package is fully functional without the extension (a pure-Python
backend is selected at import time); set BCL_NO_EXT=1 to skip the build.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BCL_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bcl._fastrank",
                    ["src/bcl/_fastrank.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except Exception as exc:  # pragma: no cover - depends on toolchain
        print(f"bcl: compiled kernels unavailable, using pure-Python backend ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
