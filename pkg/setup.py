"""Build script: compiles the optional C++ measure kernels.

Set INEQTEST_NO_EXT=1 to skip the extension; the package then runs on the
pure-NumPy kernel lane selected at import time.
"""

import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("INEQTEST_NO_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ineqtest._kernels._ckernels",
                sources=["src/ineqtest/_kernels/_ckernels.pyx"],
                language="c++",
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
