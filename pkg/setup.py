"""Build script.

The compiled sweep kernel is optional: when Cython or a C compiler is
unavailable the package installs without it and falls back to the NumPy
implementation at import time.  Set SIFLAB_NO_EXT=1 to skip the extension
outright.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions, demoting compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: compiled kernel skipped (%s); the pure fallback will be used" % exc,
            file=sys.stderr,
        )


def extensions():
    if os.environ.get("SIFLAB_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "siflab._accel._kernels",
                sources=["src/siflab/_accel/_kernels.pyx"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
