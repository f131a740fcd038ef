"""Build script for the optional Cython kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any failure to cythonize or compile downgrades
to a pure-Python install instead of aborting.
"""

from setuptools import Extension, setup


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "casimir._kernels.fast",
        sources=["src/casimir/_kernels/fast.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    try:
        return cythonize([ext], language_level=3)
    except Exception:
        return []


setup(ext_modules=extensions())
