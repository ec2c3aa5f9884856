"""Kernel selection: compiled extension when available, else the same
source interpreted.

Both modules are built from ``_core.py`` (see setup.py), use only integer
and exact-float arithmetic, and therefore produce bit-identical results;
only speed differs.
"""

try:
    from . import _core_c as kernel

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from . import _core as kernel

    BACKEND = "interpreted"

__all__ = ["kernel", "BACKEND"]
