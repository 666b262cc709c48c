"""Array kernels for the closed-form expressions.

Two interchangeable backends implement the same functions: ``_numba`` (loop
kernels compiled with ``@njit``) and ``_numpy`` (vectorised).  The numba path
is used when numba imports and ``XYZDM_PURE_NUMPY`` is unset.

All public functions broadcast their arguments to a common 1-D shape.
Parameter order is always ``j, gamma, jz, dm, b_mean, b_inhom`` followed by
``beta`` and, where relevant, ``theta`` and ``phi``.
"""

import numpy as np

from .._accel import USE_NUMBA
from . import _numpy

if USE_NUMBA:
    from . import _numba as _impl

    BACKEND = "numba"
else:
    _impl = _numpy
    BACKEND = "numpy"

__all__ = [
    "BACKEND",
    "avg_fidelity",
    "backend_module",
    "concurrence",
    "fidelity_parts",
    "ground_concurrence",
    "output_lambdas",
    "thermal_lambdas",
    "xstate",
]


def backend_module(name=None):
    """Return the kernel module for ``name`` (``"numba"``/``"numpy"``), or the active one."""
    if name is None:
        return _impl
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba

        return _numba
    raise ValueError(f"unknown kernel backend {name!r}")


def _prep(*args):
    arrs = np.broadcast_arrays(*(np.atleast_1d(np.asarray(a, dtype=np.float64)) for a in args))
    return [np.ascontiguousarray(a.ravel()) for a in arrs]


def xstate(j, gamma, jz, dm, b_mean, b_inhom, beta, *, impl=None):
    """Gibbs X-state components, columns ``mu+, mu-, w1, w2, nu, Re z, Im z, log Z``."""
    return (impl or _impl).xstate(*_prep(j, gamma, jz, dm, b_mean, b_inhom, beta))


def thermal_lambdas(j, gamma, jz, dm, b_mean, b_inhom, beta, *, impl=None):
    return (impl or _impl).thermal_lambdas(*_prep(j, gamma, jz, dm, b_mean, b_inhom, beta))


def ground_concurrence(j, gamma, jz, dm, b_mean, b_inhom, *, impl=None):
    return (impl or _impl).ground_concurrence(*_prep(j, gamma, jz, dm, b_mean, b_inhom))


def output_lambdas(j, gamma, jz, dm, b_mean, b_inhom, beta, theta, phi, *, impl=None):
    return (impl or _impl).output_lambdas(
        *_prep(j, gamma, jz, dm, b_mean, b_inhom, beta, theta, phi)
    )


def avg_fidelity(j, gamma, jz, dm, b_mean, b_inhom, beta, *, impl=None):
    return (impl or _impl).avg_fidelity(*_prep(j, gamma, jz, dm, b_mean, b_inhom, beta))


def fidelity_parts(j, gamma, jz, dm, b_mean, b_inhom, beta, phi, *, impl=None):
    """Columns ``f_c, f_q`` of the fidelity split ``F = f_c + f_q * C_in**2``."""
    return (impl or _impl).fidelity_parts(*_prep(j, gamma, jz, dm, b_mean, b_inhom, beta, phi))


def concurrence(lams, *, impl=None):
    lams = np.ascontiguousarray(np.atleast_2d(np.asarray(lams, dtype=np.float64)))
    return (impl or _impl).concurrence(lams)
