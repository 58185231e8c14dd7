"""Dense linear algebra for small labeled qubit registers.

States live on named modes drawn from the fixed register order
(A, B1, B2, C1, C2), with A the most significant bit of the computational
basis index.  Everything is immutable after construction and all operations
are pure functions, so values can be shared freely.

The X-state container at the bottom holds the eight diagonal and four
anti-diagonal parameters of a 3-qubit matrix supported on the main
diagonal and anti-diagonal only; such matrices admit closed-form
nonlocality and entanglement measures (see :mod:`gtnsim.measures`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, LabelCollision, LabelError, NotXForm

MODE_ORDER = ("A", "B1", "B2", "C1", "C2")

_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-12
_EIGENVALUE_FLOOR = -1e-10  # eigensolver noise margin on 32x32 problems
_NORM_TOL = 1e-12


def _check_labels(labels):
    labels = tuple(labels)
    for lab in labels:
        if lab not in MODE_ORDER:
            raise LabelError(f"unknown mode label {lab!r}; expected one of {MODE_ORDER}")
    if len(set(labels)) != len(labels):
        raise LabelCollision(f"duplicate labels in {labels}")
    return labels


class PureState:
    """Normalized state vector over an ordered tuple of mode labels."""

    __slots__ = ("amplitudes", "labels")

    def __init__(self, amplitudes, labels):
        labels = _check_labels(labels)
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 2 ** len(labels):
            raise DomainError(
                f"amplitude vector of length {amps.shape[0]} does not match "
                f"{len(labels)} qubits"
            )
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > _NORM_TOL:
            raise DomainError(f"state norm^2 = {norm!r} is not 1 within {_NORM_TOL}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("PureState is immutable")

    @property
    def n_qubits(self):
        return len(self.labels)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.labels)


class DensityMatrix:
    """Hermitian, positive-semidefinite matrix over labeled modes.

    ``normalized`` is False for intermediates produced by non-trace-preserving
    maps (the local filter before division by its success probability).
    """

    __slots__ = ("entries", "labels", "normalized")

    def __init__(self, entries, labels, normalized=True):
        labels = _check_labels(labels)
        mat = np.array(entries, dtype=complex)
        dim = 2 ** len(labels)
        if mat.shape != (dim, dim):
            raise DomainError(f"matrix shape {mat.shape} does not match labels {labels}")
        herm_defect = float(np.max(np.abs(mat - mat.conj().T)))
        if herm_defect > _HERMITICITY_TOL:
            raise DomainError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < _EIGENVALUE_FLOOR:
            raise DomainError(f"matrix has negative eigenvalue {min_eig:.3e}")
        if normalized:
            tr = complex(np.trace(mat))
            if abs(tr - 1.0) > _TRACE_TOL:
                raise DomainError(f"trace {tr!r} is not 1 within {_TRACE_TOL}")
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "normalized", bool(normalized))

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def n_qubits(self):
        return len(self.labels)

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


def tensor(a, b):
    """Kronecker product of two states of the same kind.

    Label tuples concatenate; the caller composes registers in global
    mode order so the result's basis index reads left-to-right.
    """
    if type(a) is not type(b):
        raise DomainError("tensor requires two PureStates or two DensityMatrices")
    overlap = set(a.labels) & set(b.labels)
    if overlap:
        raise LabelCollision(f"labels {sorted(overlap)} appear on both factors")
    labels = a.labels + b.labels
    if isinstance(a, PureState):
        return PureState(np.kron(a.amplitudes, b.amplitudes), labels)
    return DensityMatrix(
        np.kron(a.entries, b.entries),
        labels,
        normalized=a.normalized and b.normalized,
    )


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every mode not in ``keep``; kept modes retain their order."""
    keep = set(keep)
    missing = keep - set(rho.labels)
    if missing or not keep:
        raise LabelError(f"keep set {sorted(keep)} is not a nonempty subset of {rho.labels}")
    n = rho.n_qubits
    kept_positions = [i for i, lab in enumerate(rho.labels) if lab in keep]
    traced = [i for i in range(n) if i not in kept_positions]
    tensor_form = rho.entries.reshape((2,) * (2 * n))
    for offset, pos in enumerate(traced):
        # each trace removes one row and one column axis
        axis = pos - offset
        half = tensor_form.ndim // 2
        tensor_form = np.trace(tensor_form, axis1=axis, axis2=axis + half)
    dim = 2 ** len(kept_positions)
    labels = tuple(rho.labels[i] for i in kept_positions)
    return DensityMatrix(tensor_form.reshape(dim, dim), labels, normalized=rho.normalized)


def permute_modes(rho: DensityMatrix, new_labels) -> DensityMatrix:
    """Reorder the register so its labels appear in the requested order."""
    new_labels = tuple(new_labels)
    if sorted(new_labels) != sorted(rho.labels):
        raise LabelError(f"{new_labels} is not a permutation of {rho.labels}")
    n = rho.n_qubits
    perm = [rho.labels.index(lab) for lab in new_labels]
    axes = perm + [p + n for p in perm]
    mat = rho.entries.reshape((2,) * (2 * n)).transpose(axes).reshape(2**n, 2**n)
    return DensityMatrix(mat, new_labels, normalized=rho.normalized)


def relabel(rho: DensityMatrix, mapping) -> DensityMatrix:
    """Rename modes without touching the matrix (mapping must be injective)."""
    labels = tuple(mapping.get(lab, lab) for lab in rho.labels)
    return DensityMatrix(rho.entries, labels, normalized=rho.normalized)


def apply_single_qubit_kraus(rho: DensityMatrix, ops, target) -> DensityMatrix:
    """Apply sum_i (E_i on target) rho (E_i on target)^dagger.

    ``ops`` is a KrausSet (or any object with ``.ops`` / ``.trace_preserving``).
    The output keeps the input trace for trace-preserving sets and is flagged
    unnormalized otherwise.
    """
    if target not in rho.labels:
        raise LabelError(f"target {target!r} not in register {rho.labels}")
    pos = rho.labels.index(target)
    n = rho.n_qubits
    left = np.eye(2**pos)
    right = np.eye(2 ** (n - pos - 1))
    out = np.zeros_like(rho.entries)
    for op in ops.ops:
        op = np.asarray(op, dtype=complex)
        if op.shape != (2, 2):
            raise DomainError(f"Kraus operator shape {op.shape} is not (2, 2)")
        full = np.kron(np.kron(left, op), right)
        out += full @ rho.entries @ full.conj().T
    normalized = rho.normalized and ops.trace_preserving
    return DensityMatrix(out, rho.labels, normalized=normalized)


_X_PAIRS = ((0, 7), (1, 6), (2, 5), (3, 4))


@dataclass(frozen=True)
class XState:
    """Parameters of a 3-qubit matrix supported on diagonal + anti-diagonal.

    Layout: diagonal reads (mu1, mu2, mu3, mu4, nu4, nu3, nu2, nu1) and the
    anti-diagonal entries sit at (0,7) -> w1, (1,6) -> w2, (2,5) -> w3,
    (3,4) -> w4, pairing mu_i with nu_i in one 2x2 block each.
    """

    mu: tuple
    nu: tuple
    w: tuple

    def __post_init__(self):
        if len(self.mu) != 4 or len(self.nu) != 4 or len(self.w) != 4:
            raise DomainError("XState needs 4 mu, 4 nu and 4 w parameters")
        total = sum(self.mu) + sum(self.nu)
        if abs(total - 1.0) > 1e-10:
            raise DomainError(f"diagonal sums to {total!r}, not 1 within 1e-10")
        for i, (m, n, w) in enumerate(zip(self.mu, self.nu, self.w)):
            if abs(w) ** 2 > m * n + 1e-9:
                raise DomainError(
                    f"block {i + 1}: |w|^2 = {abs(w)**2:.3e} exceeds mu*nu = {m * n:.3e}"
                )

    def diagonal(self):
        m, n = self.mu, self.nu
        return (m[0], m[1], m[2], m[3], n[3], n[2], n[1], n[0])

    def to_matrix(self) -> np.ndarray:
        out = np.zeros((8, 8), dtype=complex)
        out[np.arange(8), np.arange(8)] = self.diagonal()
        for (i, j), w in zip(_X_PAIRS, self.w):
            out[i, j] = w
            out[j, i] = np.conj(w)
        return out


def as_x_state(rho: DensityMatrix, tol: float = 1e-12) -> XState:
    """Extract (mu, nu, w) from an 8x8 matrix, or raise NotXForm.

    Every entry outside the diagonal/anti-diagonal pattern must have modulus
    at most ``tol``; the largest offender is reported otherwise.
    """
    if rho.n_qubits != 3:
        raise DomainError(f"X-form extraction needs 3 qubits, got {rho.n_qubits}")
    if not rho.normalized:
        raise DomainError("X-form extraction expects a normalized matrix")
    mat = rho.entries
    allowed = np.zeros((8, 8), dtype=bool)
    allowed[np.arange(8), np.arange(8)] = True
    allowed[np.arange(8), np.arange(7, -1, -1)] = True
    stray = np.abs(np.where(allowed, 0.0, mat))
    worst = np.unravel_index(np.argmax(stray), stray.shape)
    if stray[worst] > tol:
        raise NotXForm(tuple(int(k) for k in worst), float(stray[worst]), tol)
    diag = mat.diagonal().real
    mu = tuple(float(diag[i]) for i in range(4))
    nu = tuple(float(diag[7 - i]) for i in range(4))
    w = tuple(complex(mat[i, j]) for i, j in _X_PAIRS)
    return XState(mu=mu, nu=nu, w=w)
