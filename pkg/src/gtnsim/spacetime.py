"""Kruskal-mode dilation of Dirac modes near a Schwarzschild horizon.

Each field mode seen by an infalling observer splits into a pair of qubits,
one outside and one inside the event horizon.  In natural units
(hbar = c = k_B = G = 1) the mode vacuum becomes the two-qubit state

    c |00> + s |11>,   c = (e^(-w/T) + 1)^(-1/2),   s = (e^(w/T) + 1)^(-1/2),

while the one-particle state maps to |10> (outside excited, inside empty).
T is the Hawking temperature, 1/(8 pi M) for a hole of mass M.  The shared
5-qubit register orders its modes (A, B1, B2, C1, C2): Alice keeps a flat
Minkowski qubit, Bob and Charlie each contribute an outside/inside pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .qcore import PureState, tensor

# Below this ratio the thermal weight s is zero at double precision, and
# evaluating e^(w/T) would overflow long before.
_COLD_LIMIT = 1e-6


def hawking_temperature(mass: float) -> float:
    """Temperature 1/(8 pi M) of a Schwarzschild black hole of mass M > 0."""
    if mass <= 0:
        raise DomainError(f"black-hole mass must be positive, got {mass}")
    return 1.0 / (8.0 * math.pi * mass)


@dataclass(frozen=True)
class SpacetimeParams:
    """Mode frequency and Hawking temperature, natural units.

    If ``mass`` is supplied it must reproduce ``T`` via 1/(8 pi M).
    """

    omega_k: float
    T: float
    mass: float | None = None

    def __post_init__(self):
        if self.omega_k <= 0:
            raise DomainError(f"omega_k must be positive, got {self.omega_k}")
        if self.T < 0:
            raise DomainError(f"temperature must be nonnegative, got {self.T}")
        if self.mass is not None:
            implied = hawking_temperature(self.mass)
            if abs(implied - self.T) > 1e-12:
                raise DomainError(
                    f"mass {self.mass} implies T = {implied!r}, got T = {self.T!r}"
                )

    @classmethod
    def from_mass(cls, omega_k: float, mass: float) -> "SpacetimeParams":
        return cls(omega_k=omega_k, T=hawking_temperature(mass), mass=mass)


@dataclass(frozen=True)
class InitialStateParams:
    """Weight alpha of the |000> branch of the shared GHZ-like state."""

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")


def thermal_amplitudes(omega_k: float, T: float) -> tuple[float, float]:
    """Vacuum coefficients (c, s) of the outside/inside mode pair.

    T = 0 (and any T below 1e-6 * omega) takes the exact cold branch (1, 0)
    instead of evaluating e^(w/T).  Uses the overflow-free sigmoid forms
    c^2 = 1/(1 + e^(-w/T)), s^2 = 1/(1 + e^(w/T)).
    """
    if omega_k <= 0:
        raise DomainError(f"omega_k must be positive, got {omega_k}")
    if T < 0:
        raise DomainError(f"temperature must be nonnegative, got {T}")
    if T < _COLD_LIMIT * omega_k:
        return 1.0, 0.0
    x = omega_k / T
    # x > 0 here, so e^(-x) never overflows
    emx = math.exp(-x)
    c_sq = 1.0 / (1.0 + emx)
    s_sq = emx / (1.0 + emx)
    return math.sqrt(c_sq), math.sqrt(s_sq)


def kruskal_mode_pair(params: SpacetimeParams, excited: bool, labels=("B1", "B2")) -> PureState:
    """Two-qubit (outside, inside) dilation of one Kruskal mode."""
    if excited:
        return PureState([0.0, 0.0, 1.0, 0.0], labels)
    c, s = thermal_amplitudes(params.omega_k, params.T)
    return PureState([c, 0.0, 0.0, s], labels)


def dilate_state(init: InitialStateParams, st: SpacetimeParams) -> PureState:
    """The shared 5-qubit state on (A, B1, B2, C1, C2).

    alpha |0>_A (x) vac_B (x) vac_C + sqrt(1 - alpha^2) |1>_A (x) exc_B (x) exc_C,
    with each vac/exc pair expanded by :func:`kruskal_mode_pair`.
    """
    alpha = init.alpha
    beta = math.sqrt(max(0.0, 1.0 - alpha * alpha))
    vac_branch = tensor(
        tensor(PureState([1.0, 0.0], ("A",)), kruskal_mode_pair(st, False, ("B1", "B2"))),
        kruskal_mode_pair(st, False, ("C1", "C2")),
    )
    exc_branch = tensor(
        tensor(PureState([0.0, 1.0], ("A",)), kruskal_mode_pair(st, True, ("B1", "B2"))),
        kruskal_mode_pair(st, True, ("C1", "C2")),
    )
    amps = alpha * vac_branch.amplitudes + beta * exc_branch.amplitudes
    return PureState(amps, vac_branch.labels)
