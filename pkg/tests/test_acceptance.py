"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line with the measured value and the
tolerance; the lines are printed in the pytest summary.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from xyzdm.entanglement import (
    RegionLabel,
    classify_region,
    critical_b,
    critical_dm,
    critical_temperatures,
    ground_state_concurrence,
    thermal_concurrence,
    wootters_concurrence,
)
from xyzdm.model import spectral_data
from xyzdm.sweep import SweepSpec, run_sweep
from xyzdm.teleportation import (
    BELL,
    InputState,
    average_fidelity,
    average_fidelity_quadrature,
    fidelity,
    fidelity_angle_form,
    fidelity_parts,
    input_density,
    output_components,
    teleport,
)
from xyzdm.thermal import gibbs_closed_form, gibbs_numeric, xstate_to_matrix
from xyzdm.verify import run_audit

from conftest import ACCEPTANCE_LINES, CHANNEL, PHASE, PLATEAU, random_params


def record(number, name, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "xyzdm", *args], capture_output=True, check=True
    ).stdout


def test_plateau_value():
    bc = critical_b(PLATEAU)
    values = [ground_state_concurrence(PLATEAU.replace(b_inhom=b)) for b in np.linspace(0, bc * 0.99, 50)]
    worst = max(abs(v - 0.53) for v in values)
    record(1, "plateau concurrence", worst <= 5e-4, f"max |C - 0.53| = {worst:.2e} (tol 5e-4) below b_c={bc:.5f}")


def test_critical_dm():
    dc = critical_dm(PHASE)
    spec = SweepSpec(PHASE, ("D:0:8:401",), ("C_ground",))
    r = run_sweep(spec)
    step = 8 / 400
    jumps = [t.position for t in r.transitions]
    located = len(jumps) == 1 and abs(jumps[0] - dc) <= step
    ok = abs(dc - 4.51) <= 0.01 and located
    record(2, "critical D", ok, f"D_c = {dc:.5f} (4.51 +/- 0.01); sweep jump at {jumps} (step {step})")


def test_thermal_oracle(rng):
    worst = max(
        np.abs(xstate_to_matrix(gibbs_closed_form(p)) - gibbs_numeric(p)).max()
        for p in random_params(rng, 1000)
    )
    record(3, "thermal state vs eigendecomposition", worst <= 1e-10, f"max error {worst:.2e} (tol 1e-10), 1000 draws")


def test_concurrence_oracle(rng):
    draws = random_params(rng, 1000)
    worst = max(abs(thermal_concurrence(p) - wootters_concurrence(gibbs_numeric(p))) for p in draws)
    low = 0.0
    n_low = 0
    for p in draws:
        q = p.replace(temperature=1e-3)
        eps = np.sort(spectral_data(q).eps)
        if eps[1] - eps[0] < 0.05:
            continue
        n_low += 1
        low = max(low, abs(thermal_concurrence(q) - ground_state_concurrence(q)))
    ok = worst <= 1e-9 and low <= 1e-4
    record(4, "concurrence vs Wootters", ok,
           f"max error {worst:.2e} (tol 1e-9); T=1e-3 vs ground {low:.2e} (tol 1e-4, {n_low} draws)")


def test_teleportation_limits():
    s = InputState(1.0, 0.4)
    singlet = np.outer(BELL["psi_minus"], BELL["psi_minus"].conj())
    f_bell = fidelity(input_density(s), teleport(singlet, s))
    f_mixed = fidelity(input_density(s), teleport(np.eye(4) / 4, s))
    fa_hot = average_fidelity(CHANNEL.replace(temperature=1e6))
    fa_d50 = average_fidelity(CHANNEL.replace(dm=50.0))
    ok = (
        abs(f_bell - 1) <= 1e-12
        and abs(f_mixed - 0.25) <= 1e-12
        and abs(fa_hot - 0.25) <= 1e-5
        and abs(fa_d50 - 2 / 3) <= 0.01
    )
    record(5, "teleportation limits", ok,
           f"F_bell={f_bell:.15f} F_mixed={f_mixed:.15f} F_A(T=1e6)={fa_hot:.8f} F_A(D=50)={fa_d50:.5f}")


def test_fidelity_decomposition(rng):
    angle = split = 0.0
    for p in random_params(rng, 200):
        s = InputState(rng.uniform(0, math.pi), 0.0)
        direct = fidelity(input_density(s), teleport(gibbs_numeric(p), s))
        angle = max(angle, abs(fidelity_angle_form(output_components(p, s), s) - direct))
        fc, fq = fidelity_parts(p)
        split = max(split, abs(fc + fq * s.c_in**2 - direct))
    ok = angle <= 1e-10 and split <= 1e-10
    record(6, "fidelity decomposition", ok, f"angle form {angle:.2e}, f_c + f_q C_in^2 {split:.2e} (tol 1e-10)")


def test_average_fidelity_closed_form(rng):
    worst = max(abs(average_fidelity(p) - average_fidelity_quadrature(p, 64)) for p in random_params(rng, 100))
    record(7, "average fidelity vs 64x64 quadrature", worst <= 1e-6, f"max error {worst:.2e} (tol 1e-6)")


def _fmt(v):
    return "none" if v is None else f"{v:.3f}"


def test_phase_structure():
    dc = critical_dm(PHASE)
    ds = list(range(7))
    tcs = {d: critical_temperatures(PHASE.replace(dm=d)) for d in ds}
    tc1_below = [tcs[d][0] for d in ds if d < dc]
    tc1_above = [tcs[d][0] for d in ds if d > dc]
    tc2 = [tcs[d][1] for d in ds]
    tc1_ok = all(t is not None for t in tc1_below) and np.all(np.diff(tc1_below) < 0)
    tc1_ok = tc1_ok and all(t is None for t in tc1_above)
    tc2_ok = np.all(np.diff(tc2) >= 0)

    # every Revival tag on a (D, T) grid lies inside the T_c1 < T < T_c2, D < D_c band
    bad = []
    n_revival = 0
    for d in np.linspace(0, 7, 15):
        lo, hi = critical_temperatures(PHASE.replace(dm=d))
        for t in np.linspace(0.02, 5, 60):
            if classify_region(PHASE.replace(dm=d, temperature=t)) is RegionLabel.Revival:
                n_revival += 1
                if not (d < dc and lo is not None and lo < t < hi):
                    bad.append((d, t))
    ok = tc1_ok and tc2_ok and not bad and n_revival > 0
    record(8, "phase structure", ok,
           f"T_c1={[_fmt(tcs[d][0]) for d in ds]} T_c2={[_fmt(t) for t in tc2]}; "
           f"{n_revival} Revival points, {len(bad)} outside band")


def test_formula_audit_report():
    a = run_audit(np.random.default_rng(11), 500)
    b = run_audit(np.random.default_rng(11), 500)
    lines = a.lines(itemize=True)
    items = [line for line in lines if line.startswith("# audit item")]
    complete = len(items) == len(a.items) and all(
        "reference=" in line and "oracle=" in line and "T=" in line and "theta=" in line for line in items
    )
    ok = a.draws == 500 and lines == b.lines(itemize=True) and (a.agrees or complete)
    record(9, "formula audit", ok,
           f"500 draws, {len(a.items)} itemized discrepancies, deterministic={lines == b.lines(itemize=True)}, "
           + ", ".join(f"{k} max {v:.2e}" for k, v in a.checks.items()))


def test_determinism():
    fig1 = _cli("sweep", "fig1"), _cli("sweep", "fig1")
    verify = _cli("verify", "--seed", "7"), _cli("verify", "--seed", "7")
    ok = fig1[0] == fig1[1] and verify[0] == verify[1] and len(fig1[0]) > 0
    record(10, "determinism", ok,
           f"fig1 CSV identical={fig1[0] == fig1[1]} ({len(fig1[0])} bytes), "
           f"verify --seed 7 identical={verify[0] == verify[1]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
