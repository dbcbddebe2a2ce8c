import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython (or with
# BENTCYC_NO_EXT=1) the package installs with the pure-Python fallback.
ext_modules = []
if not os.environ.get("BENTCYC_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bentcyc._kernels._ckernels",
                    ["src/bentcyc/_kernels/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
