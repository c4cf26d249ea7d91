"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``KNAPSACK_FPTAS_PURE=1`` to force the pure-Python backend.
"""

import os

from . import _purekernels as pure

compiled = None
if os.environ.get("KNAPSACK_FPTAS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = _impl.BACKEND

lower_block_conv = _impl.lower_block_conv
maxplus_steps = _impl.maxplus_steps
level_merge = _impl.level_merge
