import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the accelerator extension if possible, else fall back.

    The package is fully functional in pure Python; the extension only
    speeds up the hot enumeration kernels, so a missing compiler must not
    break installation.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken toolchain
            print(f"warning: building meanders._core failed ({exc}); "
                  "using the pure-Python kernels", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "using the pure-Python kernels", file=sys.stderr)


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("meanders._core", ["src/meanders/_core.pyx"])],
        language_level=3,
    )
except ImportError:
    print("warning: Cython not available; skipping meanders._core",
          file=sys.stderr)
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
