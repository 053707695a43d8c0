import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "fucik._sweep_cy",
                ["src/fucik/_sweep_cy.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython available: install the pure-Python package; the sweep falls
    # back to fucik._sweep_py at import time.
    extensions = []

setup(ext_modules=extensions)
