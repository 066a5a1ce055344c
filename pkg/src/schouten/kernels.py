"""Backend selection for the compute kernels.

The compiled Cython backend (schouten._kernels_cy) is used when its
extension module was built; otherwise the pure-Python twin takes over.
Both implement the same deterministic algorithms, so results are
bit-identical either way.
"""

from . import _kernels_py

try:
    from . import _kernels_cy as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

echelon = _impl.echelon
place_factor = _impl.place_factor

echelon_pure = _kernels_py.echelon
place_factor_pure = _kernels_py.place_factor
