"""Select the integer kernels used by the cyclotomic scalar type.

The compiled extension is preferred; the pure-Python module is used when the
extension was not built or when ``RSPIN_PURE_PYTHON`` is set to a non-empty
value.  Both expose ``normalize``, ``poly_mulmod``, ``mul``, ``add``, ``fma``.
"""

import os

from rspin import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("RSPIN_PURE_PYTHON"):
    try:
        from rspin import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

normalize = _impl.normalize
poly_mulmod = _impl.poly_mulmod
mul = _impl.mul
add = _impl.add
fma = _impl.fma

__all__ = ["BACKEND", "normalize", "poly_mulmod", "mul", "add", "fma"]
