# Builds the optional compiled kernels.  To compile in place:
#
#   python setup.py build_ext --inplace
#
# The package works without the extension (a pure-Python fallback is
# selected at import time), it is just slower on large images.

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "dilcon._kernels",
                ["src/dilcon/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
