"""Build script: compiles the optional monomial-evaluation extension.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions best-effort; the package has a pure-Python fallback."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or toolchain missing
            warnings.warn(f"skipping compiled kernels ({exc}); "
                          "halflearn will use the NumPy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); "
                          "halflearn will use the NumPy fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    exts = [
        Extension(
            "halflearn._kernels._monomials",
            ["src/halflearn/_kernels/_monomials.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    return cythonize(exts, language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
