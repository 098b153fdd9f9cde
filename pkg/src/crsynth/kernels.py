"""Backend selection for the hot kernels.

The compiled extension is preferred; the pure-Python module is the fallback
when the extension is missing or ``CRSYNTH_PURE_PYTHON=1`` is set.
"""

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

if _ckernels is not None and os.environ.get("CRSYNTH_PURE_PYTHON", "") in ("", "0"):
    _active = _ckernels
else:
    _active = _pykernels


def available():
    return sorted(_BACKENDS)


def backend(name=None):
    """The kernel module for ``name``, or the active one."""
    if name is None:
        return _active
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} not available; have {available()}") from None


def use(name):
    """Switch the active backend (for benchmarks and backend-parity tests)."""
    global _active
    _active = backend(name)


def active_name():
    return _active.NAME


def make_rewriter(trans, term, sigma, lhs_len, rhs, name=None):
    return backend(name).Rewriter(trans, term, sigma, lhs_len, rhs)


def enumerate_paths(delta, sigma, root, name=None):
    return backend(name).enumerate_paths(delta, sigma, root)


def find_nonassociative(table, name=None):
    mod = backend(name)
    if mod is _pykernels:
        return mod.find_nonassociative(table)
    return mod.find_nonassociative(np.ascontiguousarray(table, dtype=np.int64))
