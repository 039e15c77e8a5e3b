"""Build the optional Cython kernel; the package falls back to pure Python without it."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ramlab._modmat", ["src/ramlab/_modmat.pyx"], optional=True)],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
