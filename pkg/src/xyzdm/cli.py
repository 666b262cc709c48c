"""Command-line front end: ``xyzdm eval | sweep | verify``.

Exit status: 0 success, 1 domain or tolerance failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import entanglement as ent
from . import teleportation as tel
from .model import DomainError, ModelParams, build_hamiltonian, ground_state_density, spectral_data
from .sweep import QUANTITIES, RECIPES, Axis, SweepSpec, emit_csv, recipe, run_sweep
from .thermal import gibbs_closed_form, xstate_to_matrix
from .verify import DEFAULT_AUDIT_SAMPLES, DEFAULT_SAMPLES, SUITE_NAMES, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
OUTPUT_DIR_ENV = "XYZDM_OUTPUT_DIR"

# flag name -> ModelParams field; defaults are the plateau point of the
# ground-state b-sweep (B=0.8, J=1, Jz=-1, gamma=0.5, D=0, T=0)
PARAM_FLAGS = {
    "J": ("j", 1.0),
    "gamma": ("gamma", 0.5),
    "Jz": ("jz", -1.0),
    "D": ("dm", 0.0),
    "B": ("b_mean", 0.8),
    "b": ("b_inhom", 0.0),
    "T": ("temperature", 0.0),
}
STATE_FLAGS = {"theta": math.pi / 2, "phi": 0.0}
CONFIG_KEYS = set(PARAM_FLAGS) | set(STATE_FLAGS) | {"samples", "seed", "workers"}

EVAL_QUANTITIES = (
    "hamiltonian",
    "spectrum",
    "thermal",
    "concurrence",
    "eof",
    "lambdas",
    "cout",
    "fidelity",
    "favg",
    "dc",
    "bc",
    "tc",
    "region",
    "teleport",
)


class UsageError(Exception):
    pass


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise UsageError(f"{path}:{n}: {key} needs a number, got {value!r}") from None
    return out


def _settings(args) -> dict:
    """Defaults, then the config file, then explicit flags."""
    values = {k: d for k, (_, d) in PARAM_FLAGS.items()}
    values.update(STATE_FLAGS)
    if getattr(args, "config", None):
        values.update(read_config(args.config))
    for key in list(PARAM_FLAGS) + list(STATE_FLAGS):
        flag = getattr(args, f"p_{key}", None)
        if flag is not None:
            values[key] = flag
    return values


def _explicit_params(args) -> dict:
    given = read_config(args.config) if getattr(args, "config", None) else {}
    for key in PARAM_FLAGS:
        flag = getattr(args, f"p_{key}", None)
        if flag is not None:
            given[key] = flag
    return {PARAM_FLAGS[k][0]: v for k, v in given.items() if k in PARAM_FLAGS}


def params_from(settings: dict) -> ModelParams:
    return ModelParams(**{field: settings[k] for k, (field, _) in PARAM_FLAGS.items()})


def state_from(settings: dict) -> tel.InputState:
    return tel.InputState(settings["theta"], settings["phi"])


def _notice(msg: str):
    print(f"note: {msg}", file=sys.stderr)


def _resolve_output(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


@contextlib.contextmanager
def _destination(path):
    if path is None:
        yield sys.stdout
        return
    target = _resolve_output(path)
    with open(target, "w", newline="", encoding="utf-8") as fh:
        yield fh
    _notice(f"wrote {target}")


# --- eval ------------------------------------------------------------------


def _cnum(z) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{z.imag:+.10g}j"


def _matrix_records(name, m):
    return [(f"{name}[{i}][{j}]", m[i, j]) for i in range(m.shape[0]) for j in range(m.shape[1])]


def _format_matrix(m) -> str:
    cells = [[_cnum(x) for x in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  " + "  ".join(c.rjust(width) for c in row) for row in cells)


def _thermal_or_ground(p: ModelParams, what: str):
    if p.temperature > 0.0:
        return False
    _notice(f"T = 0: {what} uses the ground state")
    return True


def _eval_records(quantity: str, p: ModelParams, s: tel.InputState):
    """List of (name, value) where value is a scalar, None, str or a 4x4 matrix."""
    if quantity == "hamiltonian":
        return [("H", build_hamiltonian(p))]
    if quantity == "spectrum":
        sd = spectral_data(p)
        recs = [("xi", sd.xi), ("eta", sd.eta)]
        recs += [(f"eps{k + 1}", e) for k, e in enumerate(sd.eps)]
        recs += [("eigvecs", sd.eigvecs)]
        return recs
    if quantity == "thermal":
        if _thermal_or_ground(p, "the state"):
            return [("rho", ground_state_density(p))]
        x = gibbs_closed_form(p)
        return [
            ("mu_plus", x.mu_plus),
            ("mu_minus", x.mu_minus),
            ("w1", x.w1),
            ("w2", x.w2),
            ("nu", x.nu),
            ("z", x.z),
            ("log_Z", x.log_partition),
            ("rho", xstate_to_matrix(x)),
        ]
    if quantity == "concurrence":
        if _thermal_or_ground(p, "concurrence"):
            return [("C", ent.ground_state_concurrence(p)), ("branch", ent.ground_branch(p))]
        return [("C", ent.thermal_concurrence(p))]
    if quantity == "eof":
        _thermal_or_ground(p, "entanglement of formation")
        c = ent.thermal_concurrence(p)
        return [("C", c), ("E_F", ent.entanglement_of_formation(min(1.0, c)))]
    if quantity == "lambdas":
        q = ent.thermal_lambdas(p)
        return [(f"lambda{k + 1}", v) for k, v in enumerate(q.lambdas)]
    if quantity == "cout":
        return [("C_in", s.c_in), ("C_out", tel.output_concurrence_closed(p, s))]
    if quantity == "fidelity":
        fc, fq = tel.fidelity_parts(p, s.phi)
        return [("F", tel.fidelity_closed(p, s)), ("f_c", fc), ("f_q", fq)]
    if quantity == "favg":
        return [("F_A", tel.average_fidelity(p))]
    if quantity == "dc":
        return [("D_c", ent.critical_dm(p))]
    if quantity == "bc":
        return [("b_c", ent.critical_b(p))]
    if quantity == "tc":
        tc1, tc2 = ent.critical_temperatures(p)
        return [("T_c1", tc1), ("T_c2", tc2)]
    if quantity == "region":
        return [("region", ent.classify_region(p).value)]
    if quantity == "teleport":
        r = tel.teleport_report(p, s)
        return [
            ("C_in", s.c_in),
            ("C_out", r.c_out),
            ("F", r.fidelity),
            ("f_c", r.f_classical),
            ("f_q", r.f_quantum),
            ("F_A", r.avg_fidelity),
            ("rho_out", r.rho_out),
        ]
    raise UsageError(f"unknown quantity {quantity!r}")


def _write_human(records, out):
    for name, value in records:
        if isinstance(value, np.ndarray):
            print(f"{name} =", file=out)
            print(_format_matrix(value), file=out)
        elif value is None:
            print(f"{name} = none", file=out)
        elif isinstance(value, str):
            print(f"{name} = {value}", file=out)
        else:
            print(f"{name} = {_cnum(value)}", file=out)


def _write_csv(records, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["name", "re", "im"])
    flat = []
    for name, value in records:
        flat += _matrix_records(name, value) if isinstance(value, np.ndarray) else [(name, value)]
    for name, value in flat:
        if value is None or isinstance(value, str):
            w.writerow([name, "" if value is None else value, ""])
        else:
            z = complex(value)
            w.writerow([name, repr(z.real), repr(z.imag)])


def cmd_eval(args) -> int:
    settings = _settings(args)
    p = params_from(settings)
    s = state_from(settings)
    records = _eval_records(args.quantity, p, s)
    with _destination(args.output) as out:
        (_write_csv if args.csv else _write_human)(records, out)
    return EXIT_OK


# --- sweep -----------------------------------------------------------------


def _build_spec(args) -> SweepSpec:
    settings = _settings(args)
    if args.recipe:
        if args.axis:
            raise UsageError("give either a recipe or --axis, not both")
        base = recipe(args.recipe)
        fixed = base.fixed.replace(**_explicit_params(args))
        quantities = tuple(args.quantity) if args.quantity else base.quantities
        state = base.input_state
        if args.p_theta is not None or args.p_phi is not None:
            state = state_from(settings)
        if any(q in ("C_out", "F") for q in quantities) and state is None:
            state = state_from(settings)
        return SweepSpec(fixed, base.axes, quantities, state, base.label, base.note)
    if not args.axis:
        raise UsageError("give a recipe name or at least one --axis NAME:START:STOP:STEPS")
    quantities = tuple(args.quantity) if args.quantity else ("C_thermal",)
    axes = tuple(Axis.parse(a) for a in args.axis)
    needs_state = any(q in ("C_out", "F") for q in quantities)
    return SweepSpec(
        params_from(settings),
        axes,
        quantities,
        state_from(settings) if needs_state else None,
    )


def cmd_sweep(args) -> int:
    try:
        spec = _build_spec(args)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    result = run_sweep(spec, workers=args.workers)
    output = args.output
    if output is None and os.environ.get(OUTPUT_DIR_ENV):
        output = f"{spec.label or 'sweep'}.csv"
    with _destination(output) as out:
        emit_csv(result, out)
    for t in result.transitions[: args.show_transitions]:
        others = "".join(f" {k}={v:.6g}" for k, v in t.other.items())
        _notice(
            f"jump in {t.quantity} along {t.axis} at {t.position:.6g}{others}: "
            f"{t.before:.6g} -> {t.after:.6g}"
        )
    return EXIT_OK


# --- verify ----------------------------------------------------------------


def cmd_verify(args) -> int:
    settings = {}
    if args.config:
        settings = read_config(args.config)
    samples = args.samples if args.samples is not None else int(settings.get("samples", DEFAULT_SAMPLES))
    seed = args.seed if args.seed is not None else int(settings.get("seed", 0))
    if samples < 1:
        raise UsageError("--samples must be >= 1")
    report = run_verify(
        samples=samples,
        seed=seed,
        suites=args.suite,
        strict=args.strict,
        audit_samples=args.audit_samples,
    )
    with _destination(args.output) as out:
        out.write(report.text())
    return EXIT_OK if report.passed else EXIT_FAIL


# --- parser ----------------------------------------------------------------


def _add_model_flags(p: argparse.ArgumentParser, state: bool = True):
    g = p.add_argument_group("model parameters")
    for key, (field, default) in PARAM_FLAGS.items():
        g.add_argument(f"--{key}", dest=f"p_{key}", type=float, default=None,
                       metavar="X", help=f"{field} (default {default})")
    if state:
        g.add_argument("--theta", dest="p_theta", type=float, default=None, metavar="RAD",
                       help="input-state polar angle in [0, pi] (default pi/2)")
        g.add_argument("--phi", dest="p_phi", type=float, default=None, metavar="RAD",
                       help="input-state phase (default 0)")
    p.add_argument("--config", metavar="FILE", help="key = value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xyzdm",
        description="Thermal entanglement and teleportation in a two-qubit XYZ model "
        "with spin-orbit coupling and inhomogeneous field.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one quantity", allow_abbrev=False)
    pe.add_argument("quantity", choices=EVAL_QUANTITIES)
    _add_model_flags(pe)
    pe.add_argument("--csv", action="store_true", help="print name,re,im rows")
    pe.add_argument("-o", "--output", metavar="PATH")
    pe.set_defaults(func=cmd_eval)

    ps = sub.add_parser("sweep", help="grid sweep to CSV", allow_abbrev=False)
    ps.add_argument("recipe", nargs="?", choices=sorted(RECIPES), metavar="RECIPE",
                    help="one of " + ", ".join(sorted(RECIPES)))
    ps.add_argument("--axis", action="append", metavar="NAME:START:STOP:STEPS",
                    help="sweep axis (also NAME=v1,v2,...); at most two")
    ps.add_argument("--quantity", action="append", choices=QUANTITIES)
    _add_model_flags(ps)
    ps.add_argument("--workers", type=int, default=1)
    ps.add_argument("--show-transitions", type=int, default=0, metavar="N",
                    help="report the first N detected jumps on stderr")
    ps.add_argument("-o", "--output", metavar="PATH")
    ps.set_defaults(func=cmd_sweep)

    pv = sub.add_parser("verify", help="closed forms against numeric oracles", allow_abbrev=False)
    pv.add_argument("--samples", type=int, default=None, help=f"draws per suite (default {DEFAULT_SAMPLES})")
    pv.add_argument("--seed", type=int, default=None, help="default 0")
    pv.add_argument("--suite", action="append", choices=SUITE_NAMES)
    pv.add_argument("--audit-samples", type=int, default=DEFAULT_AUDIT_SAMPLES)
    pv.add_argument("--strict", action="store_true", help="fail on audit discrepancies and itemize them")
    pv.add_argument("--config", metavar="FILE")
    pv.add_argument("-o", "--output", metavar="PATH")
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"xyzdm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"xyzdm: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
