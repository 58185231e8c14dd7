"""Parameter sweeps, critical-point finders, figure presets, CSV output.

A sweep walks one physical variable over a uniform grid and records the
nonlocality S and concurrence C of the requested subsystems, one CSV row
per (grid point, subsystem).  Matrices come either from the published
closed forms (``source="closed"``, the default: fast, always X-form) or
from the Kraus + partial-trace pipeline (``source="pipeline"``), or from
both with an entrywise cross-check (``source="both"``).  Disagreements
between the routes are not masked: they surface as discrepancy records
that the CSV writer emits as comment lines.

Figure presets bundle the parameter recipes behind the reference curves:
omega = 1, alpha = sqrt(2)/2 everywhere, temperature on the default grid
0..3 in steps of 0.01, and curve-specific (r, p, f) overrides.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, GtnSimError, NoCrossing, SweepPointError, UnknownPreset
from .measures import gtc_x, svetlichny_bruteforce, svetlichny_x
from .qcore import as_x_state
from .reduced import (
    SUBSYSTEM_MODES,
    ModelParams,
    closed_form,
    evolve_model,
    max_entry_deviation,
    reduce,
    success_probability,
    with_value,
)

SWEEP_VARIABLES = ("T", "r", "p", "f", "alpha", "omega_k")
SOURCES = ("pipeline", "closed", "both")

CSV_HEADER = "T,alpha,omega,r,p,f,subsystem,S,C,Z"
NO_FILTER_SENTINEL = -1.0

# Cross-route agreement required before a "both" row is emitted.
BOTH_AGREEMENT_TOL = 1e-9

# Large-T evaluation point standing in for the evaporated-hole limit.
T_INFINITY = 1.0e6


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


@dataclass(frozen=True)
class ResultRow:
    """One CSV record: the full parameter tuple plus S, C and Z."""

    T: float
    alpha: float
    omega: float
    r: float
    p: float
    f: float  # NO_FILTER_SENTINEL when the filter was skipped
    subsystem: str
    S: float
    C: float
    Z: float

    def to_csv(self) -> str:
        return ",".join(
            (
                _fmt(self.T),
                _fmt(self.alpha),
                _fmt(self.omega),
                _fmt(self.r),
                _fmt(self.p),
                _fmt(self.f),
                self.subsystem,
                _fmt(self.S),
                _fmt(self.C),
                _fmt(self.Z),
            )
        )


@dataclass(frozen=True)
class Discrepancy:
    """A grid point where the pipeline and the published form disagreed."""

    variable: str
    value: float
    subsystem: str
    max_abs_diff: float

    def to_csv(self) -> str:
        return (
            f"# DISCREPANCY subsystem={self.subsystem} {self.variable}={_fmt(self.value)} "
            f"max_abs_diff={_fmt(self.max_abs_diff)} tol={_fmt(BOTH_AGREEMENT_TOL)}"
        )


@dataclass(frozen=True)
class SweepSpec:
    """Grid description: swept variable, range, fixed parameters, outputs."""

    variable: str
    start: float
    stop: float
    step: float
    fixed: ModelParams
    subsystems: tuple = ("AB1C1",)
    measures: tuple = ("S", "C")
    source: str = "closed"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(f"unknown sweep variable {self.variable!r}")
        if self.source not in SOURCES:
            raise DomainError(f"unknown source {self.source!r}; expected one of {SOURCES}")
        if self.stop < self.start:
            raise DomainError(f"empty range: start {self.start} > stop {self.stop}")
        if self.step <= 0:
            raise DomainError(f"step must be positive, got {self.step}")
        for sub in self.subsystems:
            if sub not in SUBSYSTEM_MODES:
                raise DomainError(f"unknown subsystem {sub!r}")
        for meas in self.measures:
            if meas not in ("S", "C"):
                raise DomainError(f"unknown measure {meas!r}")

    def grid(self) -> list:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9))
        return [self.start + i * self.step for i in range(n + 1)]


@dataclass(frozen=True)
class SweepResult:
    """Ordered entries of one sweep: value rows and discrepancy records."""

    entries: tuple

    @property
    def rows(self) -> list:
        return [e for e in self.entries if isinstance(e, ResultRow)]

    @property
    def discrepancies(self) -> list:
        return [e for e in self.entries if isinstance(e, Discrepancy)]


def _evaluate_point(mp: ModelParams, sub: str, source: str, rho5=None):
    """Matrix for one (params, subsystem) or a deviation record for 'both'."""
    if source == "closed":
        return closed_form(sub, mp), None
    if source == "pipeline":
        return reduce(rho5, sub), None
    pipeline_dm = reduce(rho5, sub)
    closed_dm = closed_form(sub, mp)
    dev = max_entry_deviation(pipeline_dm, closed_dm)
    if dev > BOTH_AGREEMENT_TOL:
        return None, dev
    return closed_dm, None


def run_sweep(spec: SweepSpec) -> SweepResult:
    """One row per grid point per subsystem, ordered by value then subsystem."""
    entries = []
    for value in spec.grid():
        mp = with_value(spec.fixed, spec.variable, value)
        rho5 = None
        if spec.source in ("pipeline", "both"):
            try:
                rho5, _ = evolve_model(mp)
            except GtnSimError as exc:
                raise SweepPointError(spec.variable, value, "*", exc) from exc
        z = success_probability(mp)
        for sub in spec.subsystems:
            try:
                dm, deviation = _evaluate_point(mp, sub, spec.source, rho5)
                x = None if dm is None else as_x_state(dm)
            except GtnSimError as exc:
                raise SweepPointError(spec.variable, value, sub, exc) from exc
            if dm is None:
                entries.append(
                    Discrepancy(
                        variable=spec.variable,
                        value=value,
                        subsystem=sub,
                        max_abs_diff=deviation,
                    )
                )
                continue
            entries.append(
                ResultRow(
                    T=mp.T,
                    alpha=mp.alpha,
                    omega=mp.omega_k,
                    r=mp.r,
                    p=mp.p,
                    f=NO_FILTER_SENTINEL if mp.f is None else mp.f,
                    subsystem=sub,
                    S=svetlichny_x(x),
                    C=gtc_x(x),
                    Z=z,
                )
            )
    return SweepResult(entries=tuple(entries))


def write_csv(result: SweepResult, stream) -> None:
    """Write header, rows and discrepancy comments in sweep order."""
    stream.write(CSV_HEADER + "\n")
    for entry in result.entries:
        stream.write(entry.to_csv() + "\n")


def csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue()


def _measure_at(mp: ModelParams, subsystem: str, source: str, which: str) -> float:
    if source == "pipeline":
        rho5, _ = evolve_model(mp)
        dm = reduce(rho5, subsystem)
    else:
        dm = closed_form(subsystem, mp)
    x = as_x_state(dm)
    return svetlichny_x(x) if which == "S" else gtc_x(x)


def find_critical_T(
    params: ModelParams,
    bracket: tuple,
    target: float = 4.0,
    subsystem: str = "AB1C1",
    source: str = "closed",
    tol: float = 1e-8,
    max_iter: int = 200,
) -> float:
    """Temperature where S crosses ``target``, by bisection.

    Raises NoCrossing when the bracket endpoints sit on the same side:
    reason "already_absent" if S < target throughout (nonlocality never
    present), "no_crossing_in_bracket" if S > target throughout.
    """
    lo, hi = bracket
    if hi <= lo:
        raise DomainError(f"bad bracket {bracket}")
    s_of = lambda t: _measure_at(with_value(params, "T", t), subsystem, source, "S")
    lo_val = s_of(lo) - target
    hi_val = s_of(hi) - target
    if abs(lo_val) <= tol:
        return lo
    if abs(hi_val) <= tol:
        return hi
    if (lo_val > 0.0) == (hi_val > 0.0):
        reason = "already_absent" if lo_val < 0.0 else "no_crossing_in_bracket"
        raise NoCrossing(reason, lo_val + target, hi_val + target)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        val = s_of(mid) - target
        if abs(val) <= tol:
            return mid
        if (val > 0.0) == (lo_val > 0.0):
            lo, lo_val = mid, val
        else:
            hi, hi_val = mid, val
    raise DomainError(f"bisection did not reach |S - target| <= {tol} in {max_iter} steps")


def find_sudden_death_C(
    params: ModelParams,
    variable: str,
    bracket: tuple,
    subsystem: str = "AB1C1",
    source: str = "closed",
    resolution: float = 1e-8,
    max_iter: int = 200,
) -> float:
    """Boundary of the region where C > 0 along one variable, by bisection.

    The bracket must have C > 0 at one end and C = 0 at the other; raises
    NoCrossing with reason "no_crossing_in_bracket" (alive throughout) or
    "already_absent" (dead throughout) otherwise.
    """
    if variable not in ("T", "r"):
        raise DomainError(f"sudden-death search supports T or r, got {variable!r}")
    lo, hi = bracket
    if hi <= lo:
        raise DomainError(f"bad bracket {bracket}")
    c_of = lambda v: _measure_at(with_value(params, variable, v), subsystem, source, "C")
    c_lo, c_hi = c_of(lo), c_of(hi)
    alive_lo, alive_hi = c_lo > 0.0, c_hi > 0.0
    if alive_lo == alive_hi:
        reason = "no_crossing_in_bracket" if alive_lo else "already_absent"
        raise NoCrossing(reason, c_lo, c_hi)
    for _ in range(max_iter):
        if hi - lo <= resolution:
            break
        mid = 0.5 * (lo + hi)
        if (c_of(mid) > 0.0) == alive_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# --------------------------------------------------------------------------
# Figure presets
# --------------------------------------------------------------------------

DEFAULT_T_GRID = (0.0, 3.0, 0.01)

_ALPHA_GHZ = math.sqrt(0.5)


@dataclass(frozen=True)
class FigurePreset:
    """A bundle of curves sharing fixed parameters and one swept variable."""

    name: str
    fixed: ModelParams
    subsystems: tuple
    measures: tuple
    curves: tuple  # per-curve field overrides, e.g. ({"r": 0.0}, {"r": 0.4})
    t_grid: tuple = DEFAULT_T_GRID

    def specs(self) -> list:
        start, stop, step = self.t_grid
        return [
            SweepSpec(
                variable="T",
                start=start,
                stop=stop,
                step=step,
                fixed=replace(self.fixed, **overrides),
                subsystems=self.subsystems,
                measures=self.measures,
                source="closed",
            )
            for overrides in self.curves
        ]


def _preset(name, subsystem, measure, r=0.0, p=1.0, f=None, r_curves=None, f_curves=None):
    if r_curves is not None:
        curves = tuple({"r": val} for val in r_curves)
    else:
        curves = tuple({"f": val} for val in f_curves)
    return FigurePreset(
        name=name,
        fixed=ModelParams(alpha=_ALPHA_GHZ, omega_k=1.0, T=1.0, r=r, p=p, f=f),
        subsystems=(subsystem,),
        measures=(measure,),
        curves=curves,
    )


_R_LINES = (0.0, 0.4, 0.7)

PRESETS = {
    preset.name: preset
    for preset in (
        _preset("fig2a", "AB1C1", "S", p=1.0, r_curves=_R_LINES),
        _preset("fig2b", "AB1C1", "C", p=1.0, r_curves=_R_LINES),
        _preset("fig2c", "AB1C1", "C", p=0.8, r_curves=_R_LINES),
        _preset("fig3a", "AB1C1", "S", r=0.4, p=1.0, f_curves=(None, 0.7)),
        _preset("fig3b", "AB1C1", "S", r=0.7, p=1.0, f_curves=(None, 0.85)),
        _preset("fig3c", "AB1C1", "C", r=0.7, p=1.0, f_curves=(None, 0.7)),
        _preset("fig3d", "AB1C1", "C", r=0.7, p=0.8, f_curves=(None, 0.75)),
        _preset("fig4a", "AB1B2", "S", p=1.0, r_curves=_R_LINES),
        _preset("fig4b", "AB1B2", "C", p=1.0, r_curves=_R_LINES),
        _preset("fig5a", "AB1B2", "S", r=0.7, p=1.0, f_curves=(None, 0.8)),
        _preset("fig5b", "AB1B2", "C", r=0.7, p=1.0, f_curves=(None, 0.8)),
        _preset("fig6a", "AB2C2", "S", p=1.0, r_curves=_R_LINES),
        _preset("fig6b", "AB2C2", "C", p=1.0, r_curves=_R_LINES),
        _preset("fig7a", "AB2C2", "S", r=0.4, p=1.0, f_curves=(None, 0.9)),
        _preset("fig7b", "AB2C2", "C", r=0.7, p=1.0, f_curves=(None, 0.8)),
        _preset("fig8a", "AB1C2", "S", p=1.0, r_curves=_R_LINES),
        _preset("fig8b", "AB1C2", "C", p=1.0, r_curves=_R_LINES),
        _preset("fig9a", "AB1C2", "S", r=0.4, p=1.0, f_curves=(None, 0.9)),
        _preset("fig9b", "AB1C2", "C", r=0.7, p=1.0, f_curves=(None, 0.8)),
    )
}

PRESET_NAMES = tuple(sorted(PRESETS))


def figure_preset(name: str) -> FigurePreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {PRESET_NAMES}") from None


def run_preset(name: str) -> SweepResult:
    """All curves of one preset, concatenated in curve order."""
    preset = figure_preset(name)
    entries = []
    for spec in preset.specs():
        entries.extend(run_sweep(spec).entries)
    return SweepResult(entries=tuple(entries))


# --------------------------------------------------------------------------
# Verification suite
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.threshold

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: max deviation {self.max_deviation:.3e} "
            f"(threshold {self.threshold:.1e})"
        )


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [c.render() for c in self.checks]
        n_fail = sum(not c.passed for c in self.checks)
        lines.append(
            f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed"
            + ("" if n_fail == 0 else f" ({n_fail} FAILED)")
        )
        return "\n".join(lines)


def sample_params(rng) -> ModelParams:
    """One random tuple from the verification grid.

    alpha uniform in [0, 1], omega/T uniform in [0.1, 20] at omega = 1,
    r and p uniform in [0, 1], f either skipped or uniform in (0.05, 0.95).
    """
    alpha = rng.uniform(0.0, 1.0)
    ratio = rng.uniform(0.1, 20.0)
    r = rng.uniform(0.0, 1.0)
    p = rng.uniform(0.0, 1.0)
    f = None if rng.uniform() < 0.25 else rng.uniform(0.05, 0.95)
    return ModelParams(alpha=alpha, omega_k=1.0, T=1.0 / ratio, r=r, p=p, f=f)


def closed_vs_pipeline_deviations(n_tuples: int = 500, seed=2024) -> dict:
    """Max entrywise |published - partial trace| per subsystem over a grid."""
    rng = np.random.default_rng(seed)
    worst = {sub: 0.0 for sub in SUBSYSTEM_MODES}
    for _ in range(n_tuples):
        mp = sample_params(rng)
        rho5, _ = evolve_model(mp)
        for sub in SUBSYSTEM_MODES:
            dev = max_entry_deviation(reduce(rho5, sub), closed_form(sub, mp))
            if dev > worst[sub]:
                worst[sub] = dev
    return worst


def oracle_vs_formula_deviation(
    n_states: int = 50, restarts: int = 200, seed=2024
) -> float:
    """Max |bruteforce - closed form| of S over model-generated states."""
    rng = np.random.default_rng(seed)
    subsystems = tuple(SUBSYSTEM_MODES)
    worst = 0.0
    for idx in range(n_states):
        mp = sample_params(rng)
        sub = subsystems[idx % len(subsystems)]
        dm = closed_form(sub, mp)
        s_formula = svetlichny_x(as_x_state(dm))
        s_oracle, _ = svetlichny_bruteforce(dm, restarts=restarts, seed=seed + idx)
        worst = max(worst, abs(s_oracle - s_formula))
    return worst


def verify_report(
    n_tuples: int = 500, n_states: int = 50, restarts: int = 200, seed=2024
) -> VerifyReport:
    """Cross-route and oracle-vs-formula checks with the spec thresholds."""
    checks = []
    worst = closed_vs_pipeline_deviations(n_tuples=n_tuples, seed=seed)
    for sub in SUBSYSTEM_MODES:
        checks.append(
            CheckResult(
                name=f"published form vs partial trace [{sub}] ({n_tuples} tuples)",
                max_deviation=worst[sub],
                threshold=1e-10,
            )
        )
    checks.append(
        CheckResult(
            name=f"Bell-operator search vs X-form value ({n_states} states)",
            max_deviation=oracle_vs_formula_deviation(
                n_states=n_states, restarts=restarts, seed=seed
            ),
            threshold=1e-6,
        )
    )
    return VerifyReport(checks=tuple(checks))
