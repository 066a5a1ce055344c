"""Build script: compiles the optional Cython elimination kernel.

The package is pure Python except for schouten._kernels_cy; when Cython or a C
compiler is missing the extension is skipped and the pure backend is used.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/schouten/_kernels_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
