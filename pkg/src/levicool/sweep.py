"""Design-space exploration: 2-D maps, constrained search, finesse trade-off.

Sweeps walk a (sphere radius x atom count) grid through the full pipeline
and emit one record per cell in a fixed row-major order (radius outer, atom
count inner), so the output is deterministic regardless of how the cells
were evaluated. Cells whose configuration violates a model precondition are
recorded with a reason code, never dropped.

The optimizer minimizes the steady-state occupation over a small set of
design variables under regime-flag constraints: a coarse grid pass followed
by coordinate-wise golden-section refinement. The returned point is never
worse than the best coarse cell.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import to_display_hz
from .errors import (ConfigError, InfeasibleError, InvalidGeometryError,
                     SingularConfigurationError)
from .steady_state import FLAG_NAMES, RegimeFlags, SteadyStateReport, evaluate
from .system import SystemConfig

ERROR_SINGULAR = "singular-config"
ERROR_GEOMETRY = "invalid-geometry"
ERROR_INFEASIBLE = "infeasible"

CSV_HEADER = ("a_nm,N_at,g_2pi_hz,Gamma_cool_2pi_hz,gamma_sc_2pi_hz,"
              "gamma_m_diff_2pi_hz,Gamma_th_2pi_hz,n_ss,sc_ratio,flags")


@dataclass(frozen=True)
class SweepSpec:
    """Grid over sphere radius and atom count around a base configuration."""

    base_config: SystemConfig
    radius_start: float            # m
    radius_stop: float             # m
    radius_steps: int
    atoms_start: float
    atoms_stop: float
    atoms_steps: int
    log_atoms: bool = False

    def __post_init__(self):
        _check_axis("radius", self.radius_start, self.radius_stop, self.radius_steps)
        _check_axis("atoms", self.atoms_start, self.atoms_stop, self.atoms_steps)
        if self.log_atoms and self.atoms_start <= 0:
            raise ConfigError("log-spaced atom axis needs a positive start")

    def radius_values(self) -> np.ndarray:
        return np.linspace(self.radius_start, self.radius_stop, self.radius_steps)

    def atoms_values(self) -> np.ndarray:
        if self.log_atoms:
            return np.geomspace(self.atoms_start, self.atoms_stop, self.atoms_steps)
        return np.linspace(self.atoms_start, self.atoms_stop, self.atoms_steps)


def _check_axis(name: str, start: float, stop: float, steps: int) -> None:
    if start <= 0 or stop <= 0:
        raise ConfigError(f"{name} range must be positive")
    if stop < start:
        raise ConfigError(f"{name} range must have stop >= start")
    if stop == start:
        if steps != 1:
            raise ConfigError(f"degenerate {name} range needs exactly 1 step")
    elif steps < 2:
        raise ConfigError(f"{name} range needs at least 2 steps")


@dataclass(frozen=True)
class SweepCell:
    """One grid point; either a full record or an error reason."""

    radius: float                  # m
    atom_count: float
    error: str | None = None
    coupling: float = math.nan
    cooling: float = math.nan
    sphere_recoil: float = math.nan
    sphere_backaction: float = math.nan
    thermalization: float = math.nan
    occupation: float = math.nan
    strong_coupling_ratio: float = math.nan
    flags: RegimeFlags | None = None


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    cells: tuple[SweepCell, ...]

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for cell in self.cells:
            lines.append(_cell_to_row(cell))
        return "\n".join(lines) + "\n"

    def valid_cells(self) -> list[SweepCell]:
        return [c for c in self.cells if c.error is None]

    def min_occupation_cell(self) -> SweepCell | None:
        valid = self.valid_cells()
        if not valid:
            return None
        return min(valid, key=lambda c: c.occupation)

    def strong_coupling_fraction(self) -> float:
        valid = self.valid_cells()
        if not valid:
            return 0.0
        strong = sum(1 for c in valid if c.strong_coupling_ratio > 1.0)
        return strong / len(valid)


def flags_to_string(flags: RegimeFlags) -> str:
    names = flags.true_names()
    return ";".join(names) if names else "-"


def _cell_to_row(cell: SweepCell) -> str:
    a_nm = format(cell.radius * 1e9, ".12g")
    n_at = format(cell.atom_count, ".12g")
    if cell.error is not None:
        return f"{a_nm},{n_at},,,,,,,,error:{cell.error}"
    fields = [
        a_nm, n_at,
        format(to_display_hz(cell.coupling), ".12g"),
        format(to_display_hz(cell.cooling), ".12g"),
        format(to_display_hz(cell.sphere_recoil), ".12g"),
        format(to_display_hz(cell.sphere_backaction), ".12g"),
        format(to_display_hz(cell.thermalization), ".12g"),
        format(cell.occupation, ".12g"),
        format(cell.strong_coupling_ratio, ".12g"),
        flags_to_string(cell.flags),
    ]
    return ",".join(fields)


def error_reason(exc: Exception) -> str:
    if isinstance(exc, InvalidGeometryError):
        return ERROR_GEOMETRY
    if isinstance(exc, (SingularConfigurationError, ZeroDivisionError)):
        return ERROR_SINGULAR
    return ERROR_INFEASIBLE


def _evaluate_cell(base: SystemConfig, radius: float, count: float) -> SweepCell:
    config = replace(
        base,
        sphere=replace(base.sphere, radius=radius),
        atoms=replace(base.atoms, count=count),
    )
    try:
        _, bundle, report = evaluate(config)
    except (ConfigError, InvalidGeometryError, SingularConfigurationError,
            ZeroDivisionError, ValueError) as exc:
        return SweepCell(radius=radius, atom_count=count, error=error_reason(exc))
    return SweepCell(
        radius=radius,
        atom_count=count,
        coupling=bundle.coupling,
        cooling=bundle.cooling,
        sphere_recoil=bundle.sphere_recoil,
        sphere_backaction=bundle.sphere_backaction,
        thermalization=bundle.thermalization,
        occupation=report.occupation,
        strong_coupling_ratio=report.strong_coupling_ratio,
        flags=report.flags,
    )


def run_sweep(spec: SweepSpec, parallel: bool = False,
              max_workers: int | None = None) -> SweepResult:
    """Evaluate the grid; assembly order is by index, never completion order."""
    points = [(r, n) for r in spec.radius_values() for n in spec.atoms_values()]
    if parallel:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            cells = list(pool.map(
                lambda p: _evaluate_cell(spec.base_config, p[0], p[1]), points))
    else:
        cells = [_evaluate_cell(spec.base_config, r, n) for r, n in points]
    return SweepResult(spec=spec, cells=tuple(cells))


# ---------------------------------------------------------------------------
# constrained minimization of the steady-state occupation

#: config keys the optimizer may vary (bounds are given in these key units)
OPTIMIZABLE_KEYS = (
    "sphere.radius_nm",
    "atoms.count",
    "lattice.power_uw",
    "tweezer.power_mw",
    "cavity.finesse",
)

#: coarse-grid points per variable, by number of variables
_COARSE_POINTS = {1: 33, 2: 11, 3: 7, 4: 5, 5: 4}

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizeSpec:
    """Search box for minimizing the occupation under flag constraints."""

    base_config: SystemConfig
    variables: tuple[str, ...] = ()
    bounds: dict[str, tuple[float, float]] = field(default_factory=dict)
    require: tuple[str, ...] = ()
    max_sweeps: int = 100
    rel_tolerance: float = 1e-4

    def __post_init__(self):
        for name in self.variables:
            if name not in OPTIMIZABLE_KEYS:
                raise ConfigError(
                    f"cannot vary {name!r}; choose from {OPTIMIZABLE_KEYS}")
            if name not in self.bounds:
                raise ConfigError(f"missing bounds for variable {name!r}")
            lo, hi = self.bounds[name]
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0 or hi <= lo:
                raise ConfigError(f"bounds for {name!r} must be finite, positive, lo < hi")
        for flag in self.require:
            if flag not in FLAG_NAMES:
                raise ConfigError(f"unknown constraint flag {flag!r}; choose from {FLAG_NAMES}")


@dataclass(frozen=True)
class OptimizeResult:
    best_values: dict[str, float]
    occupation: float
    report: SteadyStateReport
    config: SystemConfig
    trace: tuple[dict, ...]
    evaluations: int


class _Objective:
    """Evaluates occupation under constraints, recording every probe."""

    def __init__(self, spec: OptimizeSpec):
        from .configfile import set_value

        self._set_value = set_value
        self.spec = spec
        self.trace: list[dict] = []
        self.best: tuple[float, dict, SteadyStateReport, SystemConfig] | None = None

    def __call__(self, values: dict[str, float]) -> float:
        config = self.spec.base_config
        for key, value in values.items():
            config = self._set_value(config, key, value)
        entry = dict(values)
        try:
            _, _, report = evaluate(config)
        except (ConfigError, InvalidGeometryError, SingularConfigurationError,
                ZeroDivisionError, ValueError) as exc:
            entry.update(n_ss=math.nan, feasible=False, note=f"error:{error_reason(exc)}")
            self.trace.append(entry)
            return math.inf
        violated = [flag for flag in self.spec.require
                    if getattr(report.flags, flag) is not True]
        feasible = not violated
        entry.update(n_ss=report.occupation, feasible=feasible,
                     note=";".join(violated) if violated else "")
        self.trace.append(entry)
        if not feasible:
            return math.inf
        if self.best is None or report.occupation < self.best[0]:
            self.best = (report.occupation, dict(values), report, config)
        return report.occupation


def _axis_grid(lo: float, hi: float, points: int) -> np.ndarray:
    # log spacing once the box spans two decades; the design knobs are all positive
    if hi / lo >= 100.0:
        return np.geomspace(lo, hi, points)
    return np.linspace(lo, hi, points)


def _golden_section(fun, lo: float, hi: float, tol: float, max_iter: int = 60):
    """Golden-section minimum of fun over [lo, hi]; returns (x, f(x))."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
    return (c, fc) if fc < fd else (d, fd)


def optimize(spec: OptimizeSpec) -> OptimizeResult:
    """Minimize the occupation over the spec's box under its constraints.

    Raises `InfeasibleError` when no probed point satisfies the constraints;
    the error lists which constraints failed at the best unconstrained point.
    """
    objective = _Objective(spec)

    if not spec.variables:
        value = objective({})
        if not math.isfinite(value):
            violated = [flag for flag in spec.require
                        if objective.trace and flag in objective.trace[-1]["note"]]
            raise InfeasibleError(
                "base configuration violates the required constraints",
                violated or spec.require)
        best_occ, best_values, report, config = objective.best
        return OptimizeResult(best_values, best_occ, report, config,
                              tuple(objective.trace), len(objective.trace))

    points = _COARSE_POINTS[len(spec.variables)]
    grids = {name: _axis_grid(*spec.bounds[name], points) for name in spec.variables}
    spacing = {name: float(np.max(np.diff(grids[name]))) for name in spec.variables}

    for combo in itertools.product(*(grids[name] for name in spec.variables)):
        objective({name: float(v) for name, v in zip(spec.variables, combo)})

    if objective.best is None:
        finite = [e for e in objective.trace if math.isfinite(e["n_ss"])]
        if finite:
            nearest = min(finite, key=lambda e: e["n_ss"])
            violated = tuple(nearest["note"].split(";")) if nearest["note"] else ()
        else:
            violated = spec.require
        raise InfeasibleError(
            "no feasible point in the search box "
            f"(required flags: {', '.join(spec.require) or 'none'})", violated)

    current = dict(objective.best[1])
    previous_best = objective.best[0]
    for _ in range(spec.max_sweeps):
        for name in spec.variables:
            lo_b, hi_b = spec.bounds[name]
            half = spacing[name]
            lo = max(lo_b, current[name] - half)
            hi = min(hi_b, current[name] + half)
            if hi <= lo:
                continue

            def line(x, _name=name):
                probe = dict(current)
                probe[_name] = float(x)
                return objective(probe)

            x, fx = _golden_section(line, lo, hi, tol=1e-6 * (hi_b - lo_b))
            if math.isfinite(fx):
                current[name] = float(x)
        best_now = objective.best[0]
        if previous_best - best_now <= spec.rel_tolerance * abs(previous_best):
            break
        previous_best = best_now

    best_occ, best_values, report, config = objective.best
    return OptimizeResult(best_values, best_occ, report, config,
                          tuple(objective.trace), len(objective.trace))


def finesse_tradeoff(base_config: SystemConfig, finesse_values) -> list[dict]:
    """Sweep the cavity finesse at fixed geometry.

    Emits, per finesse, the coupling and backaction together with their
    finesse-normalized columns (coupling/F and backaction/F^2 stay flat,
    exhibiting the linear and quadratic scalings), plus the occupation.
    """
    rows = []
    for finesse in finesse_values:
        if finesse <= 0:
            raise ConfigError("finesse values must be > 0")
        config = replace(base_config,
                         cavity=replace(base_config.cavity, finesse=float(finesse)))
        _, bundle, report = evaluate(config)
        rows.append({
            "finesse": float(finesse),
            "coupling": float(bundle.coupling),
            "sphere_backaction": float(bundle.sphere_backaction),
            "occupation": report.occupation,
            "coupling_per_finesse": bundle.coupling / finesse,
            "backaction_per_finesse_sq": bundle.sphere_backaction / finesse**2,
        })
    return rows
