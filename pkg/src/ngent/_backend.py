"""Select the compiled moment kernels when available."""

import os

from . import _fallback

BACKEND = "python"
kernels = _fallback

if os.environ.get("NGENT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        kernels = _fallback
