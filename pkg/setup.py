import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MAGIC4_PURE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension(
                "magic4._ckernels",
                ["src/magic4/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3", "-march=native"],
            )],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
