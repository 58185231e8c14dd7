"""Genuine tripartite nonlocality and entanglement measures.

Two routes for nonlocality: ``svetlichny_x`` evaluates the closed form for
matrices supported on the diagonal/anti-diagonal,

    S = max( 8 sqrt(2) max_i |w_i|, 4 |N| ),
    N = mu1 - mu2 - mu3 + mu4 - nu4 + nu3 + nu2 - nu1,

while ``svetlichny_bruteforce`` maximizes the Bell-operator expectation over
all six measurement directions numerically and serves as the independent
oracle for the closed form.  Violation of the hybrid local bound means
S > 4; the quantum maximum is 4 sqrt(2).

Entanglement: ``gtc_pure`` is the pure-state genuine tripartite concurrence
min over bipartitions of sqrt(2 (1 - tr rho_part^2)); ``gtc_x`` is its
closed-form extension for the same diagonal/anti-diagonal class,
C = 2 max(0, max_i [ |w_i| - sum_{j != i} sqrt(mu_j nu_j) ]).

The brute-force search runs in a compiled extension when available and in a
line-identical pure-Python twin otherwise; both give the same floats for
the same seed.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qcore import DensityMatrix, PureState, XState

if os.environ.get("GTNSIM_PURE_PYTHON"):
    from . import _svetlichny_py as _kernel

    KERNEL_BACKEND = "python"
else:
    try:
        from . import _svetlichny as _kernel  # type: ignore[attr-defined]

        KERNEL_BACKEND = "compiled"
    except ImportError:  # source-only install
        from . import _svetlichny_py as _kernel

        KERNEL_BACKEND = "python"

S_QUANTUM_MAX = 4.0 * math.sqrt(2.0)

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# all 27 triple Kronecker products, flat index 9i + 3j + k
_PAULI3 = np.stack(
    [np.kron(np.kron(si, sj), sk) for si in _PAULI for sj in _PAULI for sk in _PAULI]
)


@dataclass(frozen=True)
class SvetlichnySetting:
    """Six measurement directions as (theta, phi) pairs: a, a', b, b', c, c'."""

    angles: tuple

    def __post_init__(self):
        if len(self.angles) != 12:
            raise DomainError("a setting is 6 (theta, phi) pairs = 12 angles")
        object.__setattr__(self, "angles", tuple(float(v) for v in self.angles))

    def vectors(self) -> np.ndarray:
        """The six unit vectors, rows ordered (a, a', b, b', c, c')."""
        th = np.asarray(self.angles[0::2])
        ph = np.asarray(self.angles[1::2])
        return np.column_stack(
            [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)]
        )


@dataclass(frozen=True)
class MeasureResult:
    """One (S, C) evaluation; the optimizer's best setting when available."""

    S: float
    C: float
    best_setting: SvetlichnySetting | None = None

    def __post_init__(self):
        if not -1e-9 <= self.S <= S_QUANTUM_MAX + 1e-9:
            raise DomainError(f"S = {self.S!r} outside [0, 4*sqrt(2)]")
        if not -1e-12 <= self.C <= 1.0 + 1e-12:
            raise DomainError(f"C = {self.C!r} outside [0, 1]")


def svetlichny_x(x: XState) -> float:
    """Closed-form maximal Bell-operator value for an X-form state."""
    m, n = x.mu, x.nu
    big_n = m[0] - m[1] - m[2] + m[3] - n[3] + n[2] + n[1] - n[0]
    w_max = max(abs(v) for v in x.w)
    return max(8.0 * math.sqrt(2.0) * w_max, 4.0 * abs(big_n))


def gtc_x(x: XState) -> float:
    """Closed-form genuine tripartite concurrence for an X-form state."""
    roots = [math.sqrt(max(mj * nj, 0.0)) for mj, nj in zip(x.mu, x.nu)]
    total = sum(roots)
    best = 0.0
    for i in range(4):
        margin = abs(x.w[i]) - (total - roots[i])
        if margin > best:
            best = margin
    return 2.0 * best


def gtc_pure(psi: PureState) -> float:
    """Pure-state genuine tripartite concurrence (3 qubits).

    Minimum over the three one-vs-two bipartitions of
    sqrt(2 (1 - tr rho_single^2)).
    """
    if psi.n_qubits != 3:
        raise DomainError(f"need a 3-qubit state, got {psi.n_qubits} qubits")
    amps = psi.amplitudes.reshape(2, 2, 2)
    best = math.inf
    for axis in range(3):
        mat = np.moveaxis(amps, axis, 0).reshape(2, 4)
        gram = mat @ mat.conj().T
        purity = float(np.trace(gram @ gram).real)
        best = min(best, math.sqrt(max(0.0, 2.0 * (1.0 - purity))))
    return best


def correlation_tensor(rho) -> np.ndarray:
    """M[i, j, k] = tr(rho sigma_i x sigma_j x sigma_k), real 3x3x3."""
    mat = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if mat.shape != (8, 8):
        raise DomainError(f"need an 8x8 matrix, got shape {mat.shape}")
    return np.einsum("nij,ji->n", _PAULI3, mat).real.reshape(3, 3, 3)


def _start_angles(restarts: int, seed) -> np.ndarray:
    """Seeded start points: every fourth snapped to a 30-degree lattice."""
    if restarts < 1:
        raise DomainError("need at least one restart")
    rng = np.random.default_rng(seed)
    n_lattice = restarts // 4
    n_uniform = restarts - n_lattice
    starts = np.empty((restarts, 12))
    if n_lattice:
        theta_steps = rng.integers(0, 7, size=(n_lattice, 6))  # 0..180 deg
        phi_steps = rng.integers(0, 12, size=(n_lattice, 6))  # 0..330 deg
        starts[:n_lattice, 0::2] = theta_steps * (math.pi / 6.0)
        starts[:n_lattice, 1::2] = phi_steps * (math.pi / 6.0)
    block = rng.random((n_uniform, 12))
    block[:, 0::2] *= math.pi
    block[:, 1::2] *= 2.0 * math.pi
    starts[n_lattice:] = block
    return starts


def svetlichny_bruteforce(
    rho,
    restarts: int = 200,
    tol: float = 1e-10,
    seed=0,
    max_iter: int = 1500,
) -> tuple[float, SvetlichnySetting]:
    """Maximize the Bell-operator expectation over all measurement settings.

    Multi-start Nelder-Mead over the 12 direction angles; deterministic for
    a given seed (independent of the kernel backend in use).  Returns the
    best value and the setting that achieved it.
    """
    m_flat = correlation_tensor(rho).reshape(27)
    starts = _start_angles(restarts, seed)
    best, angles = _kernel.multistart_maximize(m_flat, starts, tol, max_iter)
    return float(best), SvetlichnySetting(angles=tuple(angles))


def svetlichny_operator(setting: SvetlichnySetting) -> np.ndarray:
    """The explicit 8x8 Bell-type operator for a measurement setting.

    (A + A') x (B x C' + B' x C) + (A - A') x (B x C - B' x C'), with each
    single-qubit observable the Pauli vector along the given direction.
    Used to cross-check the fast tensor contraction against a literal trace.
    """
    vecs = setting.vectors()
    obs = [sum(v[i] * _PAULI[i] for i in range(3)) for v in vecs]
    a, ap, b, bp, c, cp = obs
    return np.kron(a + ap, np.kron(b, cp) + np.kron(bp, c)) + np.kron(
        a - ap, np.kron(b, c) - np.kron(bp, cp)
    )


def measure_x(x: XState) -> MeasureResult:
    """Both closed-form measures of one X-form state."""
    return MeasureResult(S=svetlichny_x(x), C=gtc_x(x))
