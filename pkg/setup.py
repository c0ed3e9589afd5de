"""Build hook for the optional compiled census kernels.

Without Cython (or a C compiler) the package installs pure-Python and the
numpy kernels are used instead.
"""

import os

import numpy as np
from setuptools import setup

ext_modules = []
if not os.environ.get("RINGCOVER_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "ringcover._ckernels",
                    ["src/ringcover/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
