"""Builds the optional Cython kernels; the package works without them."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("binaryk.exactrings._kernels", ["src/binaryk/exactrings/_kernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
