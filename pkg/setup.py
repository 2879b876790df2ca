"""Build script: compiles the optional polynomial kernel extension.

The package is pure Python plus one optional Cython extension,
ffinfra._kernel_c.  When Cython or a C compiler is unavailable the
install still succeeds and ffinfra.backend falls back to the pure
kernels (set FFINFRA_BACKEND=py/c to force a side)."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ffinfra._kernel_c", ["src/ffinfra/_kernel_c.pyx"])],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
