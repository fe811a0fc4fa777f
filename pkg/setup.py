"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension: ``lexecon._backend``
falls back to the pure-numpy kernels in ``lexecon._kernels_py`` when the
compiled module is missing.  Compilation failures therefore downgrade to a
warning instead of aborting the install.
"""

import warnings

import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the Cython kernels, but never make the install fail on them."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or cython missing
            warnings.warn(f"skipping compiled kernels ({exc}); "
                          "pure-python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping compiled kernels ({exc}); "
                          "pure-python fallback will be used")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "lexecon._kernels",
        ["src/lexecon/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
