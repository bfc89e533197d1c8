"""Kernel backend selection.

The compiled extension is used when it has been built; otherwise the pure
Python twin is used.  Setting ``CYCDES_KERNELS=python`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("CYCDES_KERNELS", "").lower() == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
permutations_array = _impl.permutations_array
des_masks = _impl.des_masks
cdes_masks = _impl.cdes_masks
inverse_rows = _impl.inverse_rows
arc_flags = _impl.arc_flags
avoids_flags = _impl.avoids_flags
word_f = _impl.word_f
apply_adjacent = _impl.apply_adjacent
multi_shuffle_rows = _impl.multi_shuffle_rows

__all__ = [
    "BACKEND",
    "permutations_array",
    "des_masks",
    "cdes_masks",
    "inverse_rows",
    "arc_flags",
    "avoids_flags",
    "word_f",
    "apply_adjacent",
    "multi_shuffle_rows",
]
