"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so any failure here downgrades to a warning instead of
aborting the install.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping C extension build: {exc}", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name}: {exc}", file=sys.stderr)


ext_modules = []
pyx = os.path.join("src", "heisenpoly", "_kernel_cy.pyx")
if os.path.exists(pyx):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize([pyx], language_level="3")
    except ImportError:
        print("warning: Cython not available, building pure-Python only", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
