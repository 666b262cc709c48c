"""Seeded comparisons of every closed form against a brute-force oracle.

Each suite draws random parameter sets, evaluates the closed form and an
independent numeric route, and records the worst disagreement.  The
teleportation audit compares the reference replica-state formulas,
taken verbatim, with the 16-term Pauli sum; it reports by default and only fails
in strict mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .entanglement import (
    ground_state_concurrence,
    thermal_concurrence,
    thermal_lambdas,
    wootters_concurrence,
    wootters_lambdas,
)
from .model import ModelParams, build_hamiltonian, ground_state_density, spectral_data
from .teleportation import (
    InputState,
    average_fidelity,
    average_fidelity_quadrature,
    components_to_matrix,
    fidelity,
    fidelity_angle_form,
    fidelity_closed,
    input_density,
    output_components,
    output_concurrence_closed,
    teleport,
)
from .thermal import gibbs_closed_form, gibbs_numeric, xstate_to_matrix

COUPLING_RANGE = (-5.0, 5.0)
T_RANGE = (0.05, 10.0)
LOW_T = 1e-3
LOW_T_MIN_GAP = 0.05
AUDIT_TOL = 1e-9
DEFAULT_SAMPLES = 1000
DEFAULT_AUDIT_SAMPLES = 500
FAVG_SAMPLES = 100


def draw_params(rng: np.random.Generator, temperature: Optional[float] = None) -> ModelParams:
    lo, hi = COUPLING_RANGE
    j, jz, dm, b_mean, b_inhom = rng.uniform(lo, hi, 5)
    gamma = rng.uniform(-1.0, 1.0)
    t = rng.uniform(*T_RANGE) if temperature is None else temperature
    return ModelParams(j=j, gamma=gamma, jz=jz, dm=dm, b_mean=b_mean, b_inhom=b_inhom, temperature=t)


def draw_input(rng: np.random.Generator) -> InputState:
    return InputState(rng.uniform(0.0, math.pi), rng.uniform(0.0, 2.0 * math.pi))


def describe(params: ModelParams, state: Optional[InputState] = None) -> str:
    p = params
    text = (
        f"J={p.j!r} gamma={p.gamma!r} Jz={p.jz!r} D={p.dm!r} "
        f"B={p.b_mean!r} b={p.b_inhom!r} T={p.temperature!r}"
    )
    if state is not None:
        text += f" theta={state.theta!r} phi={state.phi!r}"
    return text


@dataclass
class SuiteResult:
    name: str
    tolerance: float
    max_error: float = 0.0
    draws: int = 0
    worst: str = ""

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def record(self, err: float, where: str):
        self.draws += 1
        if err > self.max_error or not self.worst:
            self.max_error = max(self.max_error, err)
            self.worst = where

    def line(self) -> str:
        return f"{self.name},{self.max_error:.3e},{self.tolerance:.0e},{'pass' if self.passed else 'FAIL'}"


# --- suites: each takes (rng, n, result) -----------------------------------


def _spectrum(rng, n, res):
    for _ in range(n):
        p = draw_params(rng)
        h = build_hamiltonian(p)
        sd = spectral_data(p)
        err = np.abs(np.sort(sd.eps) - np.linalg.eigvalsh(h)).max()
        resid = np.abs(h @ sd.eigvecs - sd.eigvecs * sd.eps).max()
        ortho = np.abs(sd.eigvecs.conj().T @ sd.eigvecs - np.eye(4)).max()
        res.record(max(err, resid, ortho), describe(p))


def _thermal(rng, n, res):
    for _ in range(n):
        p = draw_params(rng)
        err = np.abs(xstate_to_matrix(gibbs_closed_form(p)) - gibbs_numeric(p)).max()
        res.record(err, describe(p))


def _lambdas(rng, n, res):
    for _ in range(n):
        p = draw_params(rng)
        closed = np.sort(thermal_lambdas(p).lambdas)
        oracle = np.sort(wootters_lambdas(gibbs_numeric(p)))
        res.record(np.abs(closed - oracle).max(), describe(p))


def _concurrence(rng, n, res):
    for _ in range(n):
        p = draw_params(rng)
        res.record(abs(thermal_concurrence(p) - wootters_concurrence(gibbs_numeric(p))), describe(p))


def _ground(rng, n, res):
    for _ in range(n):
        p = draw_params(rng, temperature=0.0)
        err = abs(ground_state_concurrence(p) - wootters_concurrence(ground_state_density(p)))
        res.record(err, describe(p))


def _low_t(rng, n, res):
    done = 0
    while done < n:
        p = draw_params(rng, temperature=LOW_T)
        eps = np.sort(spectral_data(p).eps)
        if eps[1] - eps[0] < LOW_T_MIN_GAP:
            continue  # near a level crossing the two limits differ
        done += 1
        res.record(abs(thermal_concurrence(p) - ground_state_concurrence(p)), describe(p))


def _fidelity(rng, n, res):
    for _ in range(n):
        p = draw_params(rng)
        s = draw_input(rng)
        rho_out = teleport(gibbs_numeric(p), s)
        res.record(abs(fidelity_closed(p, s) - fidelity(input_density(s), rho_out)), describe(p, s))


def _output_concurrence(rng, n, res):
    for _ in range(n):
        p = draw_params(rng)
        s = draw_input(rng)
        oracle = wootters_concurrence(teleport(gibbs_numeric(p), s))
        res.record(abs(output_concurrence_closed(p, s) - oracle), describe(p, s))


def _favg(rng, n, res):
    for _ in range(min(n, FAVG_SAMPLES)):
        p = draw_params(rng)
        res.record(abs(average_fidelity(p) - average_fidelity_quadrature(p)), describe(p))


SUITES: dict = {
    "spectrum": (_spectrum, 1e-10),
    "thermal": (_thermal, 1e-10),
    "lambdas": (_lambdas, 1e-9),
    "concurrence": (_concurrence, 1e-9),
    "ground": (_ground, 1e-9),
    "lowT": (_low_t, 1e-4),
    "fidelity": (_fidelity, 1e-10),
    "cout": (_output_concurrence, 1e-9),
    "favg": (_favg, 1e-6),
}


# --- teleportation audit ---------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    check: str
    draw: int
    where: str
    reference: str
    oracle: str
    error: float


@dataclass
class AuditResult:
    draws: int
    checks: dict = field(default_factory=dict)  # check -> max error
    items: list = field(default_factory=list)
    conjugate_matches: int = 0

    @property
    def max_error(self) -> float:
        return max(self.checks.values(), default=0.0)

    @property
    def agrees(self) -> bool:
        return self.max_error <= AUDIT_TOL

    def lines(self, itemize: bool) -> list:
        out = [
            f"# audit: draws={self.draws} tolerance={AUDIT_TOL:.0e} "
            f"discrepancies={len(self.items)}"
        ]
        for name, err in self.checks.items():
            bad = sum(1 for d in self.items if d.check == name)
            out.append(f"# audit: check={name} max_error={err:.3e} discrepancies={bad}")
        if self.items:
            out.append(
                f"# audit: replica coherence matches the oracle after complex conjugation "
                f"in {self.conjugate_matches} of {sum(1 for d in self.items if d.check == 'replica_matrix')} "
                "matrix discrepancies"
            )
        if itemize:
            for d in self.items:
                out.append(
                    f"# audit item: check={d.check} draw={d.draw} {d.where} "
                    f"reference={d.reference} oracle={d.oracle} error={d.error:.3e}"
                )
        return out


def _c(z: complex) -> str:
    z = complex(z)
    return f"{z.real!r}{z.imag:+.17g}j"


def run_audit(rng: np.random.Generator, n: int = DEFAULT_AUDIT_SAMPLES) -> AuditResult:
    res = AuditResult(draws=n, checks={"replica_matrix": 0.0, "replica_concurrence": 0.0, "angle_fidelity": 0.0})
    for k in range(n):
        p = draw_params(rng)
        s = draw_input(rng)
        where = describe(p, s)
        oracle = teleport(gibbs_numeric(p), s)
        comp = output_components(p, s)
        reference = components_to_matrix(comp)

        err = float(np.abs(reference - oracle).max())
        res.checks["replica_matrix"] = max(res.checks["replica_matrix"], err)
        if err > AUDIT_TOL:
            i, j = np.unravel_index(np.argmax(np.abs(reference - oracle)), (4, 4))
            res.items.append(
                Discrepancy("replica_matrix", k, f"{where} entry=({i},{j})",
                            _c(reference[i, j]), _c(oracle[i, j]), err)
            )
            if np.abs(reference.conj() - oracle).max() <= AUDIT_TOL:
                res.conjugate_matches += 1

        c_pub, c_or = output_concurrence_closed(p, s), wootters_concurrence(oracle)
        err = abs(c_pub - c_or)
        res.checks["replica_concurrence"] = max(res.checks["replica_concurrence"], err)
        if err > AUDIT_TOL:
            res.items.append(Discrepancy("replica_concurrence", k, where, repr(c_pub), repr(c_or), err))

        f_pub, f_or = fidelity_angle_form(comp, s), fidelity(input_density(s), oracle)
        err = abs(f_pub - f_or)
        res.checks["angle_fidelity"] = max(res.checks["angle_fidelity"], err)
        if err > AUDIT_TOL:
            res.items.append(Discrepancy("angle_fidelity", k, where, repr(f_pub), repr(f_or), err))
    return res


# --- driver ----------------------------------------------------------------


@dataclass
class VerifyReport:
    suites: list
    audit: Optional[AuditResult]
    strict: bool = False

    @property
    def passed(self) -> bool:
        ok = all(s.passed for s in self.suites)
        if self.strict and self.audit is not None:
            ok = ok and self.audit.agrees
        return ok

    def lines(self) -> list:
        out = ["suite,max_error,tolerance,status"]
        out += [s.line() for s in self.suites]
        if self.audit is not None:
            status = ("pass" if self.audit.agrees else "FAIL") if self.strict else "report"
            out.append(f"audit,{self.audit.max_error:.3e},{AUDIT_TOL:.0e},{status}")
        for s in self.suites:
            if not s.passed:
                out.append(f"# {s.name} worst draw: {s.worst}")
        if self.audit is not None:
            out += self.audit.lines(itemize=self.strict)
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


AUDIT_NAME = "audit"
SUITE_NAMES = tuple(SUITES) + (AUDIT_NAME,)


def run_verify(
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    suites: Optional[list] = None,
    strict: bool = False,
    audit_samples: int = DEFAULT_AUDIT_SAMPLES,
    progress: Optional[Callable[[str], None]] = None,
) -> VerifyReport:
    """Run the selected suites; each suite gets its own seeded stream."""
    names = list(SUITE_NAMES) if not suites else list(suites)
    for name in names:
        if name not in SUITE_NAMES:
            raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    seeds = np.random.SeedSequence(seed).spawn(len(SUITE_NAMES))
    streams = {name: np.random.default_rng(sq) for name, sq in zip(SUITE_NAMES, seeds)}
    results = []
    for name in SUITES:
        if name not in names:
            continue
        fn, tol = SUITES[name]
        res = SuiteResult(name, tol)
        if progress:
            progress(name)
        fn(streams[name], samples, res)
        results.append(res)
    audit = None
    if AUDIT_NAME in names:
        if progress:
            progress(AUDIT_NAME)
        audit = run_audit(streams[AUDIT_NAME], audit_samples)
    return VerifyReport(results, audit, strict)
