"""Backend selection for the Fock-space beam-splitter kernels.

The compiled extension is used when it was built; otherwise the numpy version.
Set ``BSENTANGLE_BACKEND=python`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("BSENTANGLE_BACKEND", "").lower() == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

bs_blocks = _impl.bs_blocks
bs_apply = _impl.bs_apply

__all__ = ["BACKEND", "bs_blocks", "bs_apply"]
