"""Build script: compiles the Monte Carlo kernel to a C extension.

The kernel source ``src/qcplan/_core.py`` is plain Python written in Cython
"pure Python" mode.  It is compiled here under the module name
``qcplan._core_c``; at import time the package prefers the compiled module
and falls back to interpreting the identical source, so results are
bit-for-bit the same either way (all kernel arithmetic is integer or exact
float).  The extension is marked optional: installation succeeds without a
C compiler, just slower.
"""

from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "qcplan._core_c",
        sources=["src/qcplan/_core.py"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
)
