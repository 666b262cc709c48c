"""Entanglement teleportation through two copies of the thermal state.

Each input qubit is sent through its own copy of the channel state, which
acts as a generalized depolarizing channel: Pauli error ``sigma_mu`` occurs
with the weight of the matching Bell component of the channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import kernels
from .entanglement import wootters_concurrence
from .model import DomainError, ModelParams, ZeroTemperatureError, check_density
from .thermal import gibbs_closed_form, gibbs_numeric, xstate_to_matrix

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
PAULI_NAMES = ("I", "X", "Y", "Z")

_S2 = 1.0 / math.sqrt(2.0)
BELL = {
    "psi_minus": np.array([0, _S2, -_S2, 0], dtype=complex),
    "psi_plus": np.array([0, _S2, _S2, 0], dtype=complex),
    "phi_minus": np.array([_S2, 0, 0, -_S2], dtype=complex),
    "phi_plus": np.array([_S2, 0, 0, _S2], dtype=complex),
}


def _bell_pairing():
    # sigma_mu is paired with the Bell state (sigma_mu x 1)|Psi->, so a
    # Psi- resource needs no correction
    pairs = []
    for sigma in PAULI:
        image = np.kron(sigma, np.eye(2)) @ BELL["psi_minus"]
        for name, vec in BELL.items():
            if abs(abs(np.vdot(vec, image)) - 1.0) < 1e-12:
                pairs.append(name)
                break
    return tuple(pairs)


BELL_FOR_PAULI = _bell_pairing()  # ('psi_minus', 'phi_minus', 'phi_plus', 'psi_plus')
_PROJECTORS = np.array([np.outer(BELL[n], BELL[n].conj()) for n in BELL_FOR_PAULI])
_PAIR_OPS = np.array([np.kron(a, b) for a in PAULI for b in PAULI])  # index 4*mu + nu


@dataclass(frozen=True)
class InputState:
    """|psi_in> = cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "phi", float(self.phi))
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if not math.isfinite(self.phi):
            raise DomainError("phi must be finite")

    @property
    def a(self) -> float:
        return math.sin(0.5 * self.theta) ** 2

    @property
    def b(self) -> float:
        return math.cos(0.5 * self.theta) ** 2

    @property
    def c(self) -> complex:
        # the conventional coherence label; <01|rho_in|10> is its conjugate
        return 0.5 * np.exp(-1j * self.phi) * math.sin(self.theta)

    @property
    def c_in(self) -> float:
        return math.sin(self.theta)

    @property
    def ket(self) -> np.ndarray:
        v = np.zeros(4, dtype=complex)
        v[1] = np.exp(1j * self.phi) * math.sin(0.5 * self.theta)
        v[2] = math.cos(0.5 * self.theta)
        return v


def input_density(s: InputState) -> np.ndarray:
    v = s.ket
    return np.outer(v, v.conj())


def bell_weights(channel) -> np.ndarray:
    """Weights tr[E^mu rho] for mu = I, X, Y, Z."""
    channel = check_density(channel)
    return np.einsum("kab,ba->k", _PROJECTORS, channel).real


def pair_probabilities(channel) -> np.ndarray:
    """p_{mu nu} = tr[E^mu rho] tr[E^nu rho] flattened as ``4*mu + nu``."""
    w = bell_weights(channel)
    return np.outer(w, w).ravel()


def teleport(channel, state: Union[InputState, np.ndarray]) -> np.ndarray:
    """Output state of the 16-term Pauli sum; ``state`` may be a batch (n, 4, 4)."""
    probs = pair_probabilities(channel)
    rho_in = input_density(state) if isinstance(state, InputState) else np.asarray(state, complex)
    out = np.einsum("k,kab,...bc,kdc->...ad", probs, _PAIR_OPS, rho_in, _PAIR_OPS.conj())
    return out


class OutputComponents(NamedTuple):
    alpha: float
    kappa: float
    a: float
    b: float
    c: complex


def output_components(params: ModelParams, s: InputState) -> OutputComponents:
    """alpha, kappa, a', b', c' of the replica state in the reference closed form."""
    x = gibbs_closed_form(params)
    w = x.w1 + x.w2
    m = x.mu_plus + x.mu_minus
    st = math.sin(s.theta)
    cos2, sin2 = math.cos(0.5 * s.theta) ** 2, math.sin(0.5 * s.theta) ** 2
    return OutputComponents(
        alpha=w * m,
        kappa=4.0 * x.z.real * x.nu * math.cos(s.phi) * st,
        a=m**2 * cos2 + w**2 * sin2,
        b=w**2 * cos2 + m**2 * sin2,
        c=2.0 * np.exp(-1j * s.phi) * (x.z.real**2 + np.exp(2j * s.phi) * x.nu**2) * st,
    )


def components_to_matrix(comp: OutputComponents) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = comp.alpha
    rho[0, 3] = rho[3, 0] = comp.kappa
    rho[1, 1] = comp.a
    rho[2, 2] = comp.b
    rho[1, 2] = comp.c
    rho[2, 1] = np.conj(comp.c)
    return rho


def output_closed_form(params: ModelParams, s: InputState) -> np.ndarray:
    return components_to_matrix(output_components(params, s))


def output_lambdas_closed(params: ModelParams, s: InputState) -> np.ndarray:
    if params.temperature <= 0.0:
        raise ZeroTemperatureError("output_lambdas_closed")
    return kernels.output_lambdas(*params.as_arrays(), params.beta, s.theta, s.phi)[0]


def output_concurrence_closed(params: ModelParams, s: InputState) -> float:
    lam = output_lambdas_closed(params, s)
    return float(max(0.0, 2.0 * lam.max() - lam.sum()))


def _pure_ket(rho_in, atol=1e-10):
    rho_in = check_density(rho_in)
    if abs(np.trace(rho_in @ rho_in).real - 1.0) > atol:
        raise DomainError("fidelity needs a pure input state")
    w, v = np.linalg.eigh(rho_in)
    return v[:, -1]


def fidelity(rho_in, rho_out) -> float:
    """<psi_in|rho_out|psi_in> for a pure ``rho_in``."""
    v = _pure_ket(rho_in)
    return float(np.vdot(v, np.asarray(rho_out) @ v).real)


def fidelity_angle_form(comp: OutputComponents, s: InputState) -> float:
    return float(
        comp.a * math.sin(0.5 * s.theta) ** 2
        + comp.b * math.cos(0.5 * s.theta) ** 2
        + (comp.c * np.exp(-1j * s.phi)).real * math.sin(s.theta)
    )


def fidelity_parts(params: ModelParams, phi: float = 0.0) -> tuple[float, float]:
    """(f_c, f_q) with F = f_c + f_q * C_in**2."""
    if params.temperature <= 0.0:
        raise ZeroTemperatureError("fidelity_parts")
    fc, fq = kernels.fidelity_parts(*params.as_arrays(), params.beta, phi)[0]
    return float(fc), float(fq)


def fidelity_closed(params: ModelParams, s: InputState) -> float:
    fc, fq = fidelity_parts(params, s.phi)
    return fc + fq * s.c_in**2


def average_fidelity(params: ModelParams) -> float:
    if params.temperature <= 0.0:
        raise ZeroTemperatureError("average_fidelity")
    return float(kernels.avg_fidelity(*params.as_arrays(), params.beta)[0])


def _gauss_legendre(n, lo, hi):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def average_fidelity_quadrature(channel_or_params, n: int = 64) -> float:
    """Average of the overlap fidelity over (theta, phi) with the sin(theta) measure.

    Uses the 16-term Pauli sum on the given channel (or the numeric Gibbs
    state of the given parameters) and n x n Gauss-Legendre nodes.
    """
    if isinstance(channel_or_params, ModelParams):
        channel = gibbs_numeric(channel_or_params)
    else:
        channel = channel_or_params
    th, wth = _gauss_legendre(n, 0.0, math.pi)
    ph, wph = _gauss_legendre(n, 0.0, 2.0 * math.pi)
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    kets = np.zeros(tt.shape + (4,), dtype=complex)
    kets[..., 1] = np.exp(1j * pp) * np.sin(0.5 * tt)
    kets[..., 2] = np.cos(0.5 * tt)
    rho_in = kets[..., :, None] * kets[..., None, :].conj()
    rho_out = teleport(channel, rho_in)
    fid = np.einsum("...a,...ab,...b->...", kets.conj(), rho_out, kets).real
    weights = np.outer(wth * np.sin(th), wph)
    return float((weights * fid).sum() / (4.0 * math.pi))


@dataclass(frozen=True)
class TeleportReport:
    rho_out: np.ndarray
    c_out: float
    fidelity: float
    f_classical: float
    f_quantum: float
    avg_fidelity: float


def teleport_report(params: ModelParams, s: InputState) -> TeleportReport:
    """Teleportation figures of merit for one input; rho_out from the Pauli sum."""
    channel = xstate_to_matrix(gibbs_closed_form(params))
    rho_out = teleport(channel, s)
    fc, fq = fidelity_parts(params, s.phi)
    return TeleportReport(
        rho_out=rho_out,
        c_out=wootters_concurrence(rho_out),
        fidelity=fidelity(input_density(s), rho_out),
        f_classical=fc,
        f_quantum=fq,
        avg_fidelity=average_fidelity(params),
    )

