"""Modular matrix kernels, compiled when available.

``BACKEND`` is ``"cython"`` or ``"python"``.  Set ``RAMLAB_PURE_PYTHON=1`` to
force the fallback.  The compiled path needs moduli below ``2**31``; larger
moduli are routed to the Python kernels.
"""
import os

from . import _modmat_py

_COMPILED_LIMIT = 2**31

if os.environ.get("RAMLAB_PURE_PYTHON"):
    _fast = None
else:
    try:
        from . import _modmat as _fast
    except ImportError:
        _fast = None

BACKEND = "cython" if _fast is not None else "python"


def _pick(m):
    return _fast if _fast is not None and m < _COMPILED_LIMIT else _modmat_py


def matmul_mod(A, B, m):
    return _pick(m).matmul_mod(A, B, m)


def rank_mod_prime(A, p):
    return _pick(p).rank_mod_prime(A, p)


def inv_mod(A, ell, m):
    return _pick(m).inv_mod(A, ell, m)
