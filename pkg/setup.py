import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CLUSTERAUT_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "clusteraut._speedups",
                    ["src/clusteraut/_speedups.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython available: the pure-Python kernels are used instead
        ext_modules = []

setup(ext_modules=ext_modules)
