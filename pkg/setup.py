"""Build script: compiles the optional kernel extension when a toolchain exists.

The package is fully functional without it (numpy fallback); any Cython or
compiler failure downgrades to a pure-Python install instead of aborting.
"""
import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extension_modules():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError as exc:
        warnings.warn(f"building without compiled kernels: {exc}")
        return []
    ext = Extension(
        "gaussfactor._ckernels",
        ["src/gaussfactor/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


class optional_build_ext(build_ext):
    """Compile if possible; fall back to the pure backend otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken headers, ...
            warnings.warn(f"compiled kernels skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped: {exc}")


setup(
    ext_modules=extension_modules(),
    cmdclass={"build_ext": optional_build_ext},
)
