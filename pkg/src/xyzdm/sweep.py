"""Grid sweeps over model parameters, jump detection and CSV output."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .entanglement import region_from
from .model import DomainError, ModelParams
from .teleportation import InputState

# column name -> ModelParams field (or input-state angle)
AXIS_FIELDS = {
    "J": "j",
    "gamma": "gamma",
    "Jz": "jz",
    "D": "dm",
    "B": "b_mean",
    "b": "b_inhom",
    "T": "temperature",
    "theta": "theta",
    "phi": "phi",
}
_FIELD_TO_NAME = {v: k for k, v in AXIS_FIELDS.items()}

QUANTITIES = ("C_thermal", "C_ground", "C_out", "F", "F_A", "C_channel", "region")
_NEEDS_INPUT = {"C_out", "F"}
_NEEDS_HEAT = {"C_out", "F", "F_A", "region"}


def canonical_axis_name(name: str) -> str:
    if name in AXIS_FIELDS:
        return name
    if name in _FIELD_TO_NAME:
        return _FIELD_TO_NAME[name]
    raise DomainError(f"unknown sweep parameter {name!r}; expected one of {sorted(AXIS_FIELDS)}")


def _fmt(x) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class Axis:
    """Uniform inclusive grid ``start..stop`` with ``steps`` points, or explicit ``values``."""

    name: str
    start: float = 0.0
    stop: float = 1.0
    steps: int = 2
    values: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "name", canonical_axis_name(self.name))
        if self.values is not None:
            vals = tuple(float(v) for v in self.values)
            if len(vals) < 1:
                raise DomainError(f"axis {self.name}: empty value list")
            object.__setattr__(self, "values", vals)
            return
        if int(self.steps) != self.steps or self.steps < 2:
            raise DomainError(f"axis {self.name}: steps must be an integer >= 2")
        if not self.stop > self.start:
            raise DomainError(f"axis {self.name}: stop must exceed start")
        object.__setattr__(self, "steps", int(self.steps))

    @classmethod
    def parse(cls, text: str) -> Axis:
        """``NAME:START:STOP:STEPS`` or ``NAME=v1,v2,...``."""
        if "=" in text:
            name, vals = text.split("=", 1)
            return cls(name.strip(), values=tuple(float(v) for v in vals.split(",")))
        parts = text.split(":")
        if len(parts) != 4:
            raise DomainError(f"bad axis {text!r}; use NAME:START:STOP:STEPS or NAME=v1,v2")
        return cls(parts[0].strip(), float(parts[1]), float(parts[2]), int(parts[3]))

    @property
    def grid(self) -> np.ndarray:
        if self.values is not None:
            return np.array(self.values)
        return np.linspace(self.start, self.stop, self.steps)

    @property
    def field(self) -> str:
        return AXIS_FIELDS[self.name]

    def canonical(self) -> str:
        if self.values is not None:
            return f"{self.name}=" + ",".join(_fmt(v) for v in self.values)
        return f"{self.name}:{_fmt(self.start)}:{_fmt(self.stop)}:{self.steps}"


@dataclass(frozen=True)
class SweepSpec:
    fixed: ModelParams
    axes: tuple
    quantities: tuple = ("C_thermal",)
    input_state: Optional[InputState] = None
    label: str = ""
    note: str = ""

    def __post_init__(self):
        axes = tuple(a if isinstance(a, Axis) else Axis.parse(a) for a in self.axes)
        quantities = (self.quantities,) if isinstance(self.quantities, str) else tuple(self.quantities)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "quantities", quantities)
        if not 1 <= len(axes) <= 2:
            raise DomainError("a sweep takes one or two axes")
        names = [a.name for a in axes]
        if len(set(names)) != len(names):
            raise DomainError("duplicate sweep axis")
        if not quantities:
            raise DomainError("no quantity requested")
        for q in quantities:
            if q not in QUANTITIES:
                raise DomainError(f"unknown quantity {q!r}; expected one of {QUANTITIES}")
        teleports = any(q in _NEEDS_INPUT for q in quantities)
        if teleports and self.input_state is None:
            raise DomainError(f"quantities {sorted(_NEEDS_INPUT)} need an input state (theta, phi)")
        if not teleports and {"theta", "phi"} & set(names):
            raise DomainError("theta/phi axes only make sense for C_out or F")

    def canonical(self) -> str:
        p = self.fixed
        fixed = ",".join(
            f"{_FIELD_TO_NAME[f]}={_fmt(getattr(p, f))}"
            for f in ("j", "gamma", "jz", "dm", "b_mean", "b_inhom", "temperature")
        )
        parts = []
        if self.label:
            parts.append(f"recipe={self.label}")
        parts.append("quantities=" + ",".join(self.quantities))
        parts.append("axes=" + ";".join(a.canonical() for a in self.axes))
        parts.append("fixed=" + fixed)
        if self.input_state is not None:
            s = self.input_state
            parts.append(f"input=theta={_fmt(s.theta)},phi={_fmt(s.phi)}")
        if self.note:
            parts.append(f"note={self.note}")
        return " ".join(parts)


@dataclass(frozen=True)
class Transition:
    """A jump between adjacent grid points ``left`` and ``left + 1`` along ``axis``."""

    quantity: str
    axis: str
    position: float  # midpoint of the two axis coordinates
    other: dict  # coordinates along the remaining axis, if any
    before: float
    after: float


@dataclass
class SweepResult:
    spec: SweepSpec
    coords: np.ndarray  # (rows, n_axes)
    values: dict  # quantity -> (rows,) array
    transitions: list = field(default_factory=list)

    @property
    def columns(self) -> list:
        return [a.name for a in self.spec.axes] + list(self.spec.quantities)

    @property
    def shape(self) -> tuple:
        return tuple(len(a.grid) for a in self.spec.axes)

    def rows(self):
        for i in range(self.coords.shape[0]):
            yield tuple(self.coords[i]) + tuple(self.values[q][i] for q in self.spec.quantities)

    def __len__(self):
        return self.coords.shape[0]


def _grid_columns(spec: SweepSpec):
    grids = np.meshgrid(*[a.grid for a in spec.axes], indexing="ij")
    coords = np.stack([g.ravel() for g in grids], axis=1)
    n = coords.shape[0]
    cols = {f: np.full(n, getattr(spec.fixed, f)) for f in
            ("j", "gamma", "jz", "dm", "b_mean", "b_inhom", "temperature")}
    s = spec.input_state
    cols["theta"] = np.full(n, s.theta if s else 0.0)
    cols["phi"] = np.full(n, s.phi if s else 0.0)
    for k, a in enumerate(spec.axes):
        cols[a.field] = coords[:, k].copy()
    return coords, cols


def _validate_columns(spec: SweepSpec, cols):
    if np.any(np.abs(cols["gamma"]) > 1.0):
        raise DomainError("gamma must lie in [-1, 1] over the whole grid")
    if np.any(cols["temperature"] < 0.0):
        raise DomainError("temperature must be >= 0 over the whole grid")
    if np.any((cols["theta"] < 0.0) | (cols["theta"] > math.pi)):
        raise DomainError("theta must lie in [0, pi] over the whole grid")
    if any(q in _NEEDS_HEAT for q in spec.quantities) and np.any(cols["temperature"] <= 0.0):
        raise DomainError(f"{sorted(_NEEDS_HEAT)} need temperature > 0 over the whole grid")


def _evaluate(quantity, c, impl):
    p = (c["j"], c["gamma"], c["jz"], c["dm"], c["b_mean"], c["b_inhom"])
    t = c["temperature"]
    if quantity == "C_ground":
        return kernels.ground_concurrence(*p, impl=impl)
    if quantity in ("C_thermal", "C_channel"):
        hot = t > 0.0
        out = np.empty(t.shape[0])
        if hot.any():
            lam = kernels.thermal_lambdas(*(x[hot] for x in p), 1.0 / t[hot], impl=impl)
            out[hot] = kernels.concurrence(lam, impl=impl)
        if (~hot).any():
            out[~hot] = kernels.ground_concurrence(*(x[~hot] for x in p), impl=impl)
        return out
    beta = 1.0 / t
    if quantity == "C_out":
        lam = kernels.output_lambdas(*p, beta, c["theta"], c["phi"], impl=impl)
        return kernels.concurrence(lam, impl=impl)
    if quantity == "F":
        parts = kernels.fidelity_parts(*p, beta, c["phi"], impl=impl)
        return parts[:, 0] + parts[:, 1] * np.sin(c["theta"]) ** 2
    if quantity == "F_A":
        return kernels.avg_fidelity(*p, beta, impl=impl)
    if quantity == "region":
        lam = kernels.thermal_lambdas(*p, beta, impl=impl)
        xi = np.sqrt(c["b_inhom"] ** 2 + c["j"] ** 2 + (c["jz"] * c["dm"]) ** 2)
        eta = np.sqrt(c["b_mean"] ** 2 + (c["j"] * c["gamma"]) ** 2)
        return region_from(lam, eta - c["jz"] - xi > 0.0)
    raise DomainError(f"unknown quantity {quantity!r}")


def detect_jumps(values: np.ndarray, factor: float = 10.0) -> list:
    """Indices ``i`` where the step ``values[i] -> values[i+1]`` is a jump.

    A step is a jump when it differs from both neighbouring steps by more
    than ``factor`` times the change between steps seen on either side of
    it.  Smooth stretches (including plateaus) give second differences that
    shrink with the grid spacing; a discontinuity does not.
    """
    v = np.asarray(values, dtype=float)
    d = np.diff(v)
    n = d.shape[0]
    if n < 2:
        return []
    atol = 1e-8 * max(1e-12, float(np.abs(v).max()))
    found = []
    for i in range(n):
        near = [abs(d[i] - d[k]) for k in (i - 1, i + 1) if 0 <= k < n]
        side = [abs(d[k] - d[k - 1]) for k in (i - 1, i + 2) if 1 <= k < n and k - 1 != i and k != i]
        sep = min(near)
        local = max(side) if side else 0.0
        if sep > atol and sep > factor * local:
            found.append(i)
    return found


def _transitions(spec: SweepSpec, coords, values) -> list:
    shape = tuple(len(a.grid) for a in spec.axes)
    out = []
    for q in spec.quantities:
        if q == "region":
            continue
        grid = values[q].reshape(shape)
        for ax_i, axis in enumerate(spec.axes):
            if axis.values is not None:
                # hand-picked values are curve labels, not a scan
                continue
            axis_vals = axis.grid
            moved = np.moveaxis(grid, ax_i, -1)
            others = [a for k, a in enumerate(spec.axes) if k != ax_i]
            for idx in np.ndindex(moved.shape[:-1]):
                line = moved[idx]
                other = {a.name: float(a.grid[i]) for a, i in zip(others, idx)}
                for i in detect_jumps(line):
                    out.append(
                        Transition(
                            quantity=q,
                            axis=axis.name,
                            position=0.5 * float(axis_vals[i] + axis_vals[i + 1]),
                            other=other,
                            before=float(line[i]),
                            after=float(line[i + 1]),
                        )
                    )
    return out


def run_sweep(spec: SweepSpec, workers: int = 1, impl=None) -> SweepResult:
    """Evaluate every quantity on the grid (row-major, first axis slowest)."""
    coords, cols = _grid_columns(spec)
    _validate_columns(spec, cols)
    n = coords.shape[0]
    workers = max(1, int(workers))
    bounds = np.linspace(0, n, min(workers, n) + 1).astype(int)

    def chunk(k):
        sl = slice(bounds[k], bounds[k + 1])
        part = {key: val[sl] for key, val in cols.items()}
        return {q: _evaluate(q, part, impl) for q in spec.quantities}

    if workers == 1:
        pieces = [chunk(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pieces = list(pool.map(chunk, range(len(bounds) - 1)))
    values = {q: np.concatenate([p[q] for p in pieces]) for q in spec.quantities}
    return SweepResult(spec, coords, values, _transitions(spec, coords, values))


def emit_csv(result: SweepResult, stream) -> None:
    stream.write(f"# spec: {result.spec.canonical()}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows():
        writer.writerow([v if isinstance(v, str) else _fmt(v) for v in row])


# Figure recipes.  Where a figure leaves a parameter open, the value chosen
# is stated in the recipe's note and echoed in the CSV header.
_HALF_PI = 0.5 * math.pi


def _recipes():
    fig3 = ModelParams(j=1.0, gamma=0.3, jz=0.5, b_mean=4.0, b_inhom=2.5)
    fig5 = ModelParams(j=1.0, gamma=0.3, jz=0.5, temperature=0.3)
    chan = ModelParams(j=1.0, gamma=0.3, b_mean=1.0, b_inhom=0.5, temperature=0.1)
    bell = InputState(_HALF_PI, 0.0)
    fig2_note = "B=0.8 and J=1 assumed"
    fig3_note = "Jz=0.5 assumed (reproduces D_c~4.51)"
    sign_note = "Jz=+1 used for the Jz>0 case"
    neg_note = "Jz=-1 used for the Jz<0 case"
    weak_note = "Jz=-0.25 used for the Jz<0 case (zero C_out at small D)"
    r = {
        "fig1": SweepSpec(
            ModelParams(j=1.0, gamma=0.5, jz=-1.0, b_mean=0.8),
            (Axis("b", 0.0, 3.0, 300),),
            ("C_ground",),
            label="fig1",
        ),
        "fig1b": SweepSpec(
            ModelParams(j=1.0, gamma=0.5, jz=-1.0, b_mean=0.8),
            (Axis("D", values=(0.0, 0.8, 1.0)), Axis("b", 0.0, 3.0, 300)),
            ("C_ground",),
            label="fig1b",
        ),
        "fig2": SweepSpec(
            ModelParams(j=1.0, gamma=0.8, jz=-1.0, b_mean=0.8),
            (Axis("b", values=(0.0, 0.5, 1.0)), Axis("D", 0.0, 4.0, 300)),
            ("C_ground",),
            label="fig2",
            note=fig2_note,
        ),
        "fig2b": SweepSpec(
            ModelParams(j=1.0, jz=-1.0, b_mean=0.8, b_inhom=0.75),
            (Axis("gamma", values=(0.9, 0.5, 0.0)), Axis("D", 0.0, 4.0, 300)),
            ("C_ground",),
            label="fig2b",
            note=fig2_note,
        ),
        "fig2c": SweepSpec(
            ModelParams(j=1.0, gamma=0.7, b_mean=0.8, b_inhom=0.75),
            (Axis("Jz", values=(-1.0, 0.5, 0.1)), Axis("D", 0.0, 4.0, 300)),
            ("C_ground",),
            label="fig2c",
            note=fig2_note,
        ),
        "fig3": SweepSpec(
            fig3,
            (Axis("D", 0.0, 7.0, 141), Axis("T", 0.01, 5.0, 100)),
            ("C_thermal", "region"),
            label="fig3",
            note=fig3_note,
        ),
        "fig4": SweepSpec(
            fig3,
            (Axis("D", values=(0.0, 2.0, 4.51, 6.0)), Axis("T", 0.01, 3.0, 300)),
            ("C_thermal",),
            label="fig4",
            note=fig3_note,
        ),
        "fig5": SweepSpec(
            fig5.replace(b_mean=5.0),
            (Axis("D", 0.0, 5.0, 101), Axis("b", 0.0, 5.0, 101)),
            ("C_thermal",),
            label="fig5",
        ),
        "fig5b": SweepSpec(
            fig5.replace(b_inhom=2.0),
            (Axis("D", 0.0, 5.0, 101), Axis("B", 0.0, 8.0, 101)),
            ("C_thermal",),
            label="fig5b",
        ),
        "fig6": SweepSpec(
            chan.replace(jz=1.0),
            (Axis("D", 0.0, 8.0, 81), Axis("theta", 0.0, _HALF_PI, 51)),
            ("C_out",),
            input_state=bell,
            label="fig6",
            note=sign_note,
        ),
        "fig6b": SweepSpec(
            chan.replace(jz=-0.25),
            (Axis("D", 0.0, 8.0, 81), Axis("theta", 0.0, _HALF_PI, 51)),
            ("C_out",),
            input_state=bell,
            label="fig6b",
            note=weak_note,
        ),
        "fig6c": SweepSpec(
            chan.replace(jz=1.0),
            (Axis("b", 0.0, 3.0, 61), Axis("D", 0.0, 8.0, 81)),
            ("C_out",),
            input_state=bell,
            label="fig6c",
            note=sign_note,
        ),
        "fig6d": SweepSpec(
            chan.replace(jz=-0.25),
            (Axis("b", 0.0, 3.0, 61), Axis("D", 0.0, 8.0, 81)),
            ("C_out",),
            input_state=bell,
            label="fig6d",
            note=weak_note,
        ),
        "fig7": SweepSpec(
            chan.replace(jz=1.0),
            (Axis("D", 0.0, 8.0, 81), Axis("theta", 0.0, _HALF_PI, 51)),
            ("F",),
            input_state=bell,
            label="fig7",
            note=sign_note,
        ),
        "fig7b": SweepSpec(
            chan.replace(jz=-1.0),
            (Axis("D", 0.0, 8.0, 81), Axis("theta", 0.0, _HALF_PI, 51)),
            ("F",),
            input_state=bell,
            label="fig7b",
            note=neg_note,
        ),
        "fig8": SweepSpec(
            chan,
            (Axis("Jz", -2.0, 2.0, 81), Axis("D", 0.0, 8.0, 81)),
            ("F_A", "C_out", "F", "C_channel"),
            input_state=bell,
            label="fig8",
        ),
    }
    return r


RECIPES = _recipes()


def recipe(name: str) -> SweepSpec:
    try:
        return RECIPES[name]
    except KeyError:
        raise DomainError(f"unknown recipe {name!r}; choose from {sorted(RECIPES)}") from None
