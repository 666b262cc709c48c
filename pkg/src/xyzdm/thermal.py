"""Thermal (Gibbs) state: analytic X-state form and a brute-force oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import ModelParams, ZeroTemperatureError, build_hamiltonian


@dataclass(frozen=True)
class XState:
    """Components of an X-shaped two-qubit density matrix.

    ``log_partition`` is stored instead of Z itself because Z overflows a
    double at low temperature; use :attr:`partition` when it is finite.
    """

    mu_plus: float
    mu_minus: float
    w1: float
    w2: float
    nu: float
    z: complex
    log_partition: float = math.nan
    beta: float = math.nan

    @property
    def partition(self) -> float:
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_partition))


def gibbs_closed_form(params: ModelParams) -> XState:
    if params.temperature <= 0.0:
        raise ZeroTemperatureError("gibbs_closed_form")
    beta = params.beta
    row = kernels.xstate(*params.as_arrays(), beta)[0]
    return XState(
        mu_plus=float(row[0]),
        mu_minus=float(row[1]),
        w1=float(row[2]),
        w2=float(row[3]),
        nu=float(row[4]),
        z=complex(row[5], row[6]),
        log_partition=float(row[7]),
        beta=beta,
    )


def gibbs_numeric(params: ModelParams) -> np.ndarray:
    """exp(-H/T)/Z by eigendecomposition of the Hamiltonian matrix."""
    if params.temperature <= 0.0:
        raise ZeroTemperatureError("gibbs_numeric")
    energies, vecs = np.linalg.eigh(build_hamiltonian(params))
    weights = np.exp(-(energies - energies.min()) / params.temperature)
    weights /= weights.sum()
    rho = (vecs * weights) @ vecs.conj().T
    return 0.5 * (rho + rho.conj().T)


def xstate_to_matrix(x: XState) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = x.mu_plus
    rho[1, 1] = x.w1
    rho[2, 2] = x.w2
    rho[3, 3] = x.mu_minus
    rho[0, 3] = rho[3, 0] = x.nu
    rho[1, 2] = x.z
    rho[2, 1] = np.conj(x.z)
    return rho


def matrix_to_xstate(rho, *, log_partition: float = math.nan, beta: float = math.nan) -> XState:
    """Read the X-state entries of ``rho``; off-X entries are ignored."""
    rho = np.asarray(rho)
    return XState(
        mu_plus=float(rho[0, 0].real),
        mu_minus=float(rho[3, 3].real),
        w1=float(rho[1, 1].real),
        w2=float(rho[2, 2].real),
        nu=float(rho[0, 3].real),
        z=complex(rho[1, 2]),
        log_partition=log_partition,
        beta=beta,
    )


# entries that the block structure of H forces to zero
X_ZERO_ENTRIES = tuple(
    (r, c) for r in range(4) for c in range(4) if (r in (0, 3)) != (c in (0, 3))
)
