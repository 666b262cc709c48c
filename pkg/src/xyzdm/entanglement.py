"""Concurrence, critical parameters and the (D, T) region classifier."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq
from scipy.special import xlogy

from . import kernels
from .model import (
    DomainError,
    ModelParams,
    ZeroTemperatureError,
    check_density,
    is_degenerate,
    spectral_data,
)

SIGMA_Y_Y = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)

T_SCAN_POINTS = 400
T_SCAN_MIN = 1e-3
T_XTOL = 1e-6


def wootters_lambdas(rho) -> np.ndarray:
    """Square roots of the eigenvalues of rho * rho~, in descending order.

    Computed as the singular values of ``V^T (sy x sy) V`` where
    ``rho = V V^dagger``; this avoids taking square roots of eigenvalues
    that are only known to ~1e-16 absolute accuracy.
    """
    rho = check_density(rho)
    w, v = np.linalg.eigh(rho)
    root = v * np.sqrt(np.clip(w, 0.0, None))
    return np.linalg.svd(root.T @ SIGMA_Y_Y @ root, compute_uv=False)


def wootters_concurrence(rho) -> float:
    lam = wootters_lambdas(rho)
    return float(max(0.0, lam[0] - lam[1:].sum()))


def entanglement_of_formation(c: float) -> float:
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"concurrence must lie in [0, 1], got {c}")
    x = 0.5 * (1.0 + math.sqrt(1.0 - c * c))
    return float(-(xlogy(x, x) + xlogy(1.0 - x, 1.0 - x)) / math.log(2.0))


@dataclass(frozen=True)
class LambdaQuad:
    """(lambda1, lambda2) from the w/z block, (lambda3, lambda4) from the mu/nu block."""

    lambdas: tuple

    @property
    def lambda_max(self) -> float:
        return max(self.lambdas)

    @property
    def signed_concurrence(self) -> float:
        """2 lambda_max - sum(lambda); may be negative."""
        return 2.0 * self.lambda_max - sum(self.lambdas)

    @property
    def concurrence(self) -> float:
        return max(0.0, self.signed_concurrence)

    @property
    def wz_dominant(self) -> bool:
        """True when lambda_max comes from the w/z block (ties go to the mu/nu block)."""
        l1, l2, l3, l4 = self.lambdas
        return max(l1, l2) > max(l3, l4)


def thermal_lambdas(params: ModelParams) -> LambdaQuad:
    if params.temperature <= 0.0:
        raise ZeroTemperatureError("thermal_lambdas")
    row = kernels.thermal_lambdas(*params.as_arrays(), params.beta)[0]
    return LambdaQuad(tuple(float(x) for x in row))


def thermal_concurrence(params: ModelParams) -> float:
    """Closed-form concurrence of the Gibbs state; T = 0 falls back to the ground state."""
    if params.temperature <= 0.0:
        return ground_state_concurrence(params)
    return thermal_lambdas(params).concurrence


def ground_state_concurrence(params: ModelParams) -> float:
    return float(kernels.ground_concurrence(*params.as_arrays())[0])


def ground_branch(params: ModelParams) -> str:
    """Which ground state the closed form selects: ``"sigma"``, ``"psi"`` or ``"mixed"``."""
    sd = spectral_data(params)
    if is_degenerate(sd.eps[1], sd.eps[3]):
        return "mixed"
    return "sigma" if sd.eps[3] < sd.eps[1] else "psi"


def _level_crossing_room(params: ModelParams) -> Optional[float]:
    room = params.eta - params.jz
    return room if room >= 0.0 else None


def critical_dm(params: ModelParams) -> Optional[float]:
    """D at which the psi-/Sigma- levels cross, or None if they never do.

    None is returned for ``jz == 0`` (D then drops out of the spectrum) and
    whenever the crossing radicand is negative.
    """
    if params.jz == 0.0:
        return None
    room = _level_crossing_room(params)
    if room is None:
        return None
    rad = room**2 - (params.b_inhom**2 + params.j**2)
    if rad < 0.0:
        return None
    return math.sqrt(rad) / abs(params.jz)


def critical_b(params: ModelParams) -> Optional[float]:
    room = _level_crossing_room(params)
    if room is None:
        return None
    rad = room**2 - ((params.jz * params.dm) ** 2 + params.j**2)
    if rad < 0.0:
        return None
    return math.sqrt(rad)


def below_critical_dm(params: ModelParams) -> bool:
    """True when Sigma- is the strict ground state, i.e. D < D_c."""
    return params.eta - params.jz - params.xi > 0.0


def default_t_max(params: ModelParams) -> float:
    return 5.0 * max(1.0, abs(params.jz), params.eta, params.xi)


def _scan(params: ModelParams, temps: np.ndarray):
    lam = kernels.thermal_lambdas(*params.as_arrays(), 1.0 / temps)
    signed = 2.0 * lam.max(axis=1) - lam.sum(axis=1)
    switch = lam[:, :2].max(axis=1) - lam[:, 2:].max(axis=1)
    return signed, switch


def _signed_c(params, t):
    return thermal_lambdas(params.replace(temperature=t)).signed_concurrence


def _switch(params, t):
    l1, l2, l3, l4 = thermal_lambdas(params.replace(temperature=t)).lambdas
    return max(l1, l2) - max(l3, l4)


def critical_temperatures(
    params: ModelParams,
    t_max: Optional[float] = None,
    n_scan: int = T_SCAN_POINTS,
    xtol: float = T_XTOL,
) -> tuple[Optional[float], Optional[float]]:
    """(T_c1, T_c2) of the thermal concurrence at fixed D; temperature is ignored.

    T_c1 is the lowest zero of C(T) that has entanglement on both sides of it.
    When D < D_c the concurrence can vanish on a window far narrower than the
    scan step, so besides sign changes of C on the grid we also bracket the
    point where lambda_max moves from the mu/nu block to the w/z block; there
    C = 0 exactly.  T_c2 is the last zero after which C stays 0 up to
    ``t_max``.
    """
    if t_max is None:
        t_max = default_t_max(params)
    temps = np.linspace(T_SCAN_MIN, t_max, n_scan)
    signed, switch = _scan(params, temps)
    pos = signed > 0.0

    def root(f, lo, hi):
        return brentq(f, lo, hi, xtol=xtol)

    zeros = []
    for k in range(n_scan - 1):
        if pos[k] and not pos[k + 1]:
            zeros.append((k, root(lambda t: _signed_c(params, t), temps[k], temps[k + 1])))
        elif switch[k] <= 0.0 < switch[k + 1] and pos[: k + 1].any():
            # at the switch lambda_1 = lambda_4, so C' = -(lambda_2 + lambda_3) <= 0
            t_star = root(lambda t: _switch(params, t), temps[k], temps[k + 1])
            if pos[k] and _signed_c(params, t_star) < 0.0:
                t_star = root(lambda t: _signed_c(params, t), temps[k], t_star)
            zeros.append((k, t_star))

    tc1 = None
    for k, t in zeros:
        if pos[: k + 1].any() and pos[k + 1 :].any():
            tc1 = t
            break

    tc2 = None
    if pos.any() and not pos[-1]:
        last = int(np.flatnonzero(pos)[-1])
        tc2 = root(lambda t: _signed_c(params, t), temps[last], temps[last + 1])
    return tc1, tc2


class RegionLabel(enum.Enum):
    MainLowT = "MainLowT"
    Revival = "Revival"
    HighD = "HighD"
    Separable = "Separable"


def region_from(lams: np.ndarray, below_dc: np.ndarray) -> np.ndarray:
    """Vectorised region tags from lambda rows and the D < D_c mask."""
    lams = np.atleast_2d(lams)
    c = 2.0 * lams.max(axis=1) - lams.sum(axis=1)
    wz = lams[:, :2].max(axis=1) > lams[:, 2:].max(axis=1)
    out = np.where(below_dc, np.where(wz, "Revival", "MainLowT"), "HighD").astype(object)
    out[c <= 0.0] = "Separable"
    return out


def classify_region(params: ModelParams) -> RegionLabel:
    quad = thermal_lambdas(params)
    tag = region_from(np.array([quad.lambdas]), np.array([below_critical_dm(params)]))[0]
    return RegionLabel(tag)
