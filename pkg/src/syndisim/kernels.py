"""Kernel dispatch: the compiled extension when it imports, pure Python otherwise."""

from . import _pykernels
from ._pykernels import MOTIF_ORDER

try:
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _pykernels
    BACKEND = "python"

motif_counts = _impl.motif_counts
betweenness_raw = _impl.betweenness_raw
core_numbers = _impl.core_numbers

__all__ = ["BACKEND", "MOTIF_ORDER", "motif_counts", "betweenness_raw", "core_numbers"]
