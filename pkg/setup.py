"""Build hook for the optional compiled kernels.

The package is pure Python plus one optional Cython extension that holds the
hot inner loops: Laurent-coefficient dictionary arithmetic, window-permutation
composition and length counting, Hecke generator multiplication, and the
tensor-space generator sweeps.  If Cython or a C compiler is unavailable the
wheel is built without the extension and the package falls back to the
reference implementations in ``affineschur._kernels_py``; the import-time
switch lives in ``affineschur._backend``.

Set AFFINESCHUR_PURE=1 to skip the extension build entirely.
"""

import os

from setuptools import setup


def extensions():
    if os.environ.get("AFFINESCHUR_PURE"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            ["src/affineschur/_kernels.pyx"],
            compiler_directives={
                "language_level": 3,
                "embedsignature": True,
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except Exception:
        return []


setup(ext_modules=extensions())
