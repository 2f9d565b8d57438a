"""Build script: compiles the exact-cut search kernel as a C extension.

The package works without the extension (a pure-Python twin is selected at
import time), but the compiled kernel is ~100x faster on 20+ vertex graphs.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "expander_forge._mincut_core",
                ["src/expander_forge/_mincut_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
