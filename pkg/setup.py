from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernel is optional: if Cython or a C compiler is missing the
# package still installs and falls back to the numpy implementation.
ext = Extension("nhiep._jacobi", ["src/nhiep/_jacobi.pyx"], optional=True)

setup(ext_modules=cythonize([ext], language_level="3") if cythonize else [])
