from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("rosenthal._kernels", ["src/rosenthal/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Without Cython the package still installs; the pure-Python kernels
    # are selected at import time.
    extensions = []

setup(ext_modules=extensions)
