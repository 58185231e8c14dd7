"""Alice-side open-system evolution: GAD channel and local filter.

The generalized amplitude damping channel mixes relaxation toward |0> and
toward |1> with weights p and 1-p; p = 1 recovers plain amplitude damping.
Its four Kraus operators are

    E0 = sqrt(p)   diag(1, sqrt(1-r))      E1 = sqrt(p)   [[0, sqrt(r)], [0, 0]]
    E2 = sqrt(1-p) diag(sqrt(1-r), 1)      E3 = sqrt(1-p) [[0, 0], [sqrt(r), 0]]

The local filter diag(sqrt(1-f), sqrt(f)) is non-trace-preserving; applying
it succeeds with probability Z (the trace it leaves behind), after which the
state is renormalized.  The unfiltered baseline is represented by skipping
the filter entirely, which coincides with f = 1/2 up to the renormalization
(the operator is then proportional to the identity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FilterAnnihilation, FormulaDomainError
from .qcore import MODE_ORDER, DensityMatrix, PureState, apply_single_qubit_kraus

_COMPLETENESS_TOL = 1e-12
_ANNIHILATION_FLOOR = 1e-15


@dataclass(frozen=True)
class GadParams:
    """Damping strength r and mixing parameter p, both in [0, 1]."""

    r: float
    p: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise DomainError(f"r must lie in [0, 1], got {self.r}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class BathParams:
    """Thermal-bath description behind (r, p): rate, storage time, frequency, temperature."""

    gamma0: float
    t: float
    omega: float
    T_env: float

    def __post_init__(self):
        if self.gamma0 < 0:
            raise DomainError(f"gamma0 must be nonnegative, got {self.gamma0}")
        if self.t < 0:
            raise DomainError(f"storage period must be nonnegative, got {self.t}")
        if self.omega <= 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if self.T_env <= 0:
            raise DomainError(f"environment temperature must be positive, got {self.T_env}")


@dataclass(frozen=True)
class FilterParams:
    """Filter strength f in (0, 1), or None to skip the filtering step."""

    f: float | None

    def __post_init__(self):
        if self.f is not None and not 0.0 < self.f < 1.0:
            raise DomainError(f"filter strength must lie in (0, 1), got {self.f}")

    @classmethod
    def off(cls) -> "FilterParams":
        return cls(f=None)

    @property
    def active(self) -> bool:
        return self.f is not None


@dataclass(frozen=True)
class KrausSet:
    """A list of 2x2 operators; completeness enforced when trace-preserving."""

    ops: tuple
    trace_preserving: bool = True

    def __post_init__(self):
        ops = tuple(np.asarray(op, dtype=complex) for op in self.ops)
        for op in ops:
            if op.shape != (2, 2):
                raise DomainError(f"Kraus operator shape {op.shape} is not (2, 2)")
        if self.trace_preserving:
            total = sum(op.conj().T @ op for op in ops)
            defect = float(np.max(np.abs(total - np.eye(2))))
            if defect > _COMPLETENESS_TOL:
                raise DomainError(f"sum E^dag E deviates from identity by {defect:.3e}")
        object.__setattr__(self, "ops", ops)


def gad_kraus(g: GadParams) -> KrausSet:
    """The four GAD Kraus operators for (r, p)."""
    sp = math.sqrt(g.p)
    sq = math.sqrt(1.0 - g.p)
    sr = math.sqrt(g.r)
    s1r = math.sqrt(1.0 - g.r)
    return KrausSet(
        ops=(
            sp * np.array([[1.0, 0.0], [0.0, s1r]]),
            sp * np.array([[0.0, sr], [0.0, 0.0]]),
            sq * np.array([[s1r, 0.0], [0.0, 1.0]]),
            sq * np.array([[0.0, 0.0], [sr, 0.0]]),
        ),
        trace_preserving=True,
    )


def gad_from_bath(b: BathParams, corrected: bool = False) -> GadParams:
    """Map bath parameters to (r, p).

    As printed, the rate prefactor is [2/(e^(-w/T') - 1) + 1] * gamma0, which
    is negative for every w/T' > 0; ``corrected=True`` uses the thermal
    occupation form [2/(e^(+w/T') - 1) + 1] * gamma0 instead.  Neither
    variant is treated as ground truth.  When the resulting r would fall
    outside [0, 1] (negative rate with t > 0) a FormulaDomainError carrying
    the computed rate is raised; t = 0 always yields r = 0.
    """
    x = b.omega / b.T_env
    p = 1.0 / (1.0 + math.exp(-x))
    sign = 1.0 if corrected else -1.0
    denom = math.expm1(sign * x)
    if denom == 0.0:
        raise FormulaDomainError(math.inf, "rate prefactor diverges at omega/T_env = 0")
    gamma = (2.0 / denom + 1.0) * b.gamma0
    r = -math.expm1(-gamma * b.t)
    if r < 0.0:
        raise FormulaDomainError(
            gamma,
            f"printed rate formula gives gamma = {gamma!r} < 0, so r = {r!r} "
            "is unphysical; pass corrected=True for the occupation-factor variant",
        )
    return GadParams(r=r, p=p)


def filter_operator(f: FilterParams) -> KrausSet:
    """The (single, non-trace-preserving) filtering operator diag(sqrt(1-f), sqrt(f))."""
    if not f.active:
        raise DomainError("filter_operator requires an active filter strength")
    op = np.array([[math.sqrt(1.0 - f.f), 0.0], [0.0, math.sqrt(f.f)]])
    return KrausSet(ops=(op,), trace_preserving=False)


def evolve(psi5: PureState, g: GadParams, filt: FilterParams) -> tuple[DensityMatrix, float]:
    """GAD on mode A, then (optionally) filter on mode A with renormalization.

    Returns the normalized state together with the filter success
    probability Z (1.0 when the filter is skipped).
    """
    if psi5.labels != MODE_ORDER:
        raise DomainError(f"expected full register {MODE_ORDER}, got {psi5.labels}")
    rho = apply_single_qubit_kraus(psi5.density(), gad_kraus(g), "A")
    if not filt.active:
        return rho, 1.0
    unnorm = apply_single_qubit_kraus(rho, filter_operator(filt), "A")
    z = unnorm.trace()
    if z <= _ANNIHILATION_FLOOR:
        raise FilterAnnihilation(f"filter left weight Z = {z!r}")
    return DensityMatrix(unnorm.entries / z, unnorm.labels, normalized=True), z
