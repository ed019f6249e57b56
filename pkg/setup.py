"""Build hook for the optional compiled kernel extension.

The package is fully functional without the extension: ``dafbe._backend``
falls back to the pure-Python kernels when ``dafbe._kernels_cy`` is missing.
Set DAFBE_PURE=1 to skip the compile step entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, most likely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: could not build dafbe._kernels_cy ({exc}); "
            "falling back to pure-Python kernels",
            file=sys.stderr,
        )


def extensions():
    if os.environ.get("DAFBE_PURE"):
        return []
    if not os.path.exists("src/dafbe/_kernels_cy.pyx"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython unavailable; building pure-Python dafbe", file=sys.stderr)
        return []
    ext = Extension(
        "dafbe._kernels_cy",
        ["src/dafbe/_kernels_cy.pyx"],
        language="c++",
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
