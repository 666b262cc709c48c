"""Parameters, Hamiltonian and closed-form spectrum of the two-qubit XYZ model.

Basis order is ``|00>, |01>, |10>, |11>`` with qubit 1 as the left tensor
factor and ``|0>`` the spin-up (sigma_z = +1) state.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

DEGENERACY_RTOL = 1e-9

PARAM_NAMES = ("j", "gamma", "jz", "dm", "b_mean", "b_inhom", "temperature")


class DomainError(ValueError):
    """Raised when inputs are outside the domain of an operation."""


class ZeroTemperatureError(DomainError):
    """Raised by finite-temperature operations called with ``T <= 0``."""

    def __init__(self, what="this operation"):
        super().__init__(
            f"{what} needs temperature > 0; use ground_state_density / "
            "ground_state_concurrence for T = 0"
        )


@dataclass(frozen=True)
class ModelParams:
    """One instance of the model.

    ``j`` is the mean XY coupling, ``gamma`` the XY anisotropy, ``jz`` the z
    coupling, ``dm`` the dimensionless spin-orbit strength D (the DM vector is
    ``jz * dm`` along z), ``b_mean`` and ``b_inhom`` the mean field B and its
    inhomogeneity b.  Temperature is in energy units (k_B = 1).
    """

    j: float = 1.0
    gamma: float = 0.0
    jz: float = 0.0
    dm: float = 0.0
    b_mean: float = 0.0
    b_inhom: float = 0.0
    temperature: float = 0.0

    def __post_init__(self):
        for name in PARAM_NAMES:
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not -1.0 <= self.gamma <= 1.0:
            raise DomainError(f"gamma must lie in [-1, 1], got {self.gamma}")
        if self.temperature < 0.0:
            raise DomainError(f"temperature must be >= 0, got {self.temperature}")

    @property
    def beta(self) -> float:
        if self.temperature <= 0.0:
            return math.inf
        return 1.0 / self.temperature

    @property
    def xi(self) -> float:
        return math.hypot(self.b_inhom, self.j, self.jz * self.dm)

    @property
    def eta(self) -> float:
        return math.hypot(self.b_mean, self.j * self.gamma)

    def replace(self, **changes) -> ModelParams:
        return dataclasses.replace(self, **changes)

    def as_arrays(self):
        """Parameters in kernel argument order (without temperature)."""
        return (self.j, self.gamma, self.jz, self.dm, self.b_mean, self.b_inhom)


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    p = params
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = 0.5 * p.jz + p.b_mean
    h[1, 1] = -0.5 * p.jz + p.b_inhom
    h[2, 2] = -0.5 * p.jz - p.b_inhom
    h[3, 3] = 0.5 * p.jz - p.b_mean
    h[0, 3] = h[3, 0] = p.j * p.gamma
    h[1, 2] = complex(p.j, p.jz * p.dm)
    h[2, 1] = complex(p.j, -p.jz * p.dm)
    return h


@dataclass(frozen=True)
class SpectralData:
    """Closed-form eigensystem.

    ``eps`` holds (eps1, eps2, eps3, eps4) and ``eigvecs`` the matching
    columns (psi+, psi-, Sigma+, Sigma-).
    """

    xi: float
    eta: float
    eps: np.ndarray
    n_plus: float
    n_minus: float
    m_plus: float
    m_minus: float
    eigvecs: np.ndarray

    @property
    def ground_gap(self) -> float:
        """eps2 - eps4; positive when Sigma- is the ground state."""
        return float(self.eps[1] - self.eps[3])


def _block_eigvecs(p, q, r):
    """Unit eigenvectors (for +r, -r) of ``[[p, q], [conj(q), -p]]`` with r = |(p, q)|.

    Uses whichever pair of unnormalised forms avoids cancellation.  For
    r = 0 the block vanishes and the basis vectors are returned.
    """
    if r == 0.0:
        return np.array([1.0, 0.0], complex), np.array([0.0, 1.0], complex)
    if p >= 0.0:
        up = np.array([p + r, np.conj(q)], complex)
        down = np.array([-q, p + r], complex)
    else:
        up = np.array([q, r - p], complex)
        down = np.array([p - r, np.conj(q)], complex)
    return _unit(up), _unit(down)


def _unit(v):
    # exact power-of-two rescale so subnormal couplings survive the norm
    _, e = math.frexp(float(np.abs(v).max()))
    v = np.ldexp(v.real, -e) + 1j * np.ldexp(v.imag, -e)
    return v / np.linalg.norm(v)


def _fix_phase(v):
    # real, non-negative coefficient on the second basis state, as in the
    # N(... |01> + |10>) / M(... |00> + |11>) form
    k = 1 if abs(v[1]) > 0.0 else 0
    phase = np.exp(-1j * np.angle(v[k]))
    out = v * phase
    out[k] = abs(v[k])
    return out


def spectral_data(params: ModelParams) -> SpectralData:
    p = params
    xi, eta = p.xi, p.eta
    eps = np.array([-0.5 * p.jz + xi, -0.5 * p.jz - xi, 0.5 * p.jz + eta, 0.5 * p.jz - eta])

    psi_p, psi_m = _block_eigvecs(p.b_inhom, complex(p.j, p.jz * p.dm), xi)
    sig_p, sig_m = _block_eigvecs(p.b_mean, complex(p.j * p.gamma, 0.0), eta)
    psi_p, psi_m, sig_p, sig_m = map(_fix_phase, (psi_p, psi_m, sig_p, sig_m))

    vecs = np.zeros((4, 4), dtype=complex)
    vecs[[1, 2], 0] = psi_p
    vecs[[1, 2], 1] = psi_m
    vecs[[0, 3], 2] = sig_p
    vecs[[0, 3], 3] = sig_m
    return SpectralData(
        xi=xi,
        eta=eta,
        eps=eps,
        n_plus=float(abs(psi_p[1])),
        n_minus=float(abs(psi_m[1])),
        m_plus=float(abs(sig_p[1])),
        m_minus=float(abs(sig_m[1])),
        eigvecs=vecs,
    )


def is_degenerate(eps2: float, eps4: float) -> bool:
    return abs(eps2 - eps4) <= DEGENERACY_RTOL * max(1.0, abs(eps2))


def ground_state_density(params: ModelParams) -> np.ndarray:
    """Zero-temperature state; equal mixture at the psi-/Sigma- level crossing."""
    sd = spectral_data(params)
    psi_m = sd.eigvecs[:, 1]
    sig_m = sd.eigvecs[:, 3]
    if is_degenerate(sd.eps[1], sd.eps[3]):
        return 0.5 * (np.outer(psi_m, psi_m.conj()) + np.outer(sig_m, sig_m.conj()))
    v = psi_m if sd.eps[1] < sd.eps[3] else sig_m
    return np.outer(v, v.conj())


def check_density(rho, atol: float = 1e-10) -> np.ndarray:
    """Validate a two-qubit density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise DomainError("density matrix has non-finite entries")
    if np.abs(rho - rho.conj().T).max() > atol:
        raise DomainError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise DomainError(f"density matrix trace is {np.trace(rho).real:.3g}, not 1")
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise DomainError("density matrix is not positive semidefinite")
    return rho
