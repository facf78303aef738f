import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install still works: the package falls back to the
    # numpy kernels at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "kmeans_sketch._kernels",
                ["src/kmeans_sketch/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
