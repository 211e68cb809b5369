"""Build script: compiles the optional Cython kernel extension.

If Cython or a C compiler is unavailable the build falls back to the pure
numpy kernels selected at import time by adsxai.kernels.
"""
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if we can; otherwise continue without it."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # missing compiler, bad toolchain, ...
            warnings.warn(f"compiled kernels skipped ({exc}); using pure-python backend")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped ({exc}); using pure-python backend")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "adsxai.kernels._ckern",
        ["src/adsxai/kernels/_ckern.pyx"],
        # -ffp-contract=off keeps compiled arithmetic bit-identical to the
        # numpy fallback (no fused multiply-add contraction).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
