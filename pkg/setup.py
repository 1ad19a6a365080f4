"""Build script: compiles the optional term-arithmetic kernel.

The compiled extension is a pure speedup; if Cython or a C compiler is
unavailable the package installs anyway and falls back to the Python
kernel at import time (see linfty.kernel).
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/linfty/_kernel.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"linfty: skipping compiled kernel ({exc}); pure-Python kernel will be used")

setup(ext_modules=ext_modules)
