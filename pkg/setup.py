"""Build script: compiles the optional Sturm-bisection accelerator.

The package is fully functional without the extension; ``spinosc.eigensolve``
falls back to a vectorized NumPy kernel when ``spinosc._sturm`` is absent.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the accelerator if the toolchain allows, otherwise skip it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel ({exc}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); pure-Python fallback will be used")


def make_extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "spinosc._sturm",
                ["src/spinosc/_sturm.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=make_extensions(), cmdclass={"build_ext": OptionalBuildExt})
