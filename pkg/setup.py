"""Builds the optional compiled kernels; the package works without them."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("KNAPSACK_FPTAS_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("knapsack_fptas._kernels", ["src/knapsack_fptas/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3", "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
