"""Dense complex linear algebra kernel for small qubit registers.

Convention used throughout the package: qubit 0 is the most significant
bit of an amplitude (or matrix) index, so an n-qubit vector reshaped to
shape [2]*n exposes qubit k as axis k.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

MAX_QUBITS = 8
MAX_EIG_DIM = 16
HERMITIAN_TOL = 1e-10
OFFDIAG_TARGET = 1e-14


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two complex matrices (or vectors)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m, dtype=complex).conj().T


def n_qubits_of(dim: int) -> int:
    """Number of qubits for a dimension that must be a power of two."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def hermiticity_defect(m: np.ndarray) -> float:
    """max |M[i,j] - conj(M[j,i])| over all entries."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T)))


def _check_keep(keep: Sequence[int], n: int) -> list[int]:
    keep = [int(k) for k in keep]
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate qubit indices in keep={keep}")
    for k in keep:
        if not 0 <= k < n:
            raise ValueError(f"qubit index {k} out of range for {n} qubits")
    return keep


def partial_trace(state: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix on the kept qubits, in the order given.

    Accepts a pure-state amplitude vector (1-d) or a density matrix (2-d).
    """
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        n = n_qubits_of(state.shape[0])
        keep = _check_keep(keep, n)
        rest = [q for q in range(n) if q not in keep]
        psi = state.reshape([2] * n).transpose(keep + rest)
        m = psi.reshape(2 ** len(keep), -1)
        rho = m @ m.conj().T
    elif state.ndim == 2:
        if state.shape[0] != state.shape[1]:
            raise ValueError("density matrix must be square")
        n = n_qubits_of(state.shape[0])
        keep = _check_keep(keep, n)
        rest = [q for q in range(n) if q not in keep]
        perm = keep + rest + [n + q for q in keep] + [n + q for q in rest]
        dk, dr = 2 ** len(keep), 2 ** len(rest)
        t = state.reshape([2] * (2 * n)).transpose(perm).reshape(dk, dr, dk, dr)
        rho = np.einsum("ajbj->ab", t)
    else:
        raise ValueError("state must be a vector or a square matrix")
    return 0.5 * (rho + rho.conj().T)


def _off_norm(a: np.ndarray) -> float:
    # Summed directly over off-diagonal entries; subtracting the diagonal
    # share from the total hits a cancellation floor near sqrt(eps)*|A|.
    mask = ~np.eye(a.shape[0], dtype=bool)
    return float(np.sqrt(np.sum(np.abs(a[mask]) ** 2)))


def jacobi_eigh(
    m: np.ndarray,
    target: float = OFFDIAG_TARGET,
    max_sweeps: int = 60,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a Hermitian matrix by cyclic complex plane rotations.

    Each rotation zeroes one off-diagonal pivot: the pivot's phase is
    absorbed into the rotation so the remaining 2x2 problem is real, then
    the smaller-angle root of the usual tangent equation is taken.  Sweeps
    repeat until the off-diagonal Frobenius norm drops below `target`.

    Returns (eigenvalues ascending, unitary with eigenvectors as columns),
    satisfying m @ v == v @ diag(w) up to roundoff.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n > MAX_EIG_DIM:
        raise ValueError(f"dimension {n} exceeds eigensolver limit {MAX_EIG_DIM}")
    if hermiticity_defect(a) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    if n == 1:
        return a.diagonal().real.copy(), v
    pivot_floor = target / (4.0 * n * n)
    for _ in range(max_sweeps):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= pivot_floor:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                w00, w01 = c, s
                w10, w11 = -s * np.conj(phase), c * np.conj(phase)
                col_p = a[:, p] * w00 + a[:, q] * w10
                col_q = a[:, p] * w01 + a[:, q] * w11
                a[:, p], a[:, q] = col_p, col_q
                row_p = np.conj(w00) * a[p, :] + np.conj(w10) * a[q, :]
                row_q = np.conj(w01) * a[p, :] + np.conj(w11) * a[q, :]
                a[p, :], a[q, :] = row_p, row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vc_p = v[:, p] * w00 + v[:, q] * w10
                vc_q = v[:, p] * w01 + v[:, q] * w11
                v[:, p], v[:, q] = vc_p, vc_q
    else:
        raise ArithmeticError("plane-rotation eigensolver did not converge")
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending."""
    w, _ = jacobi_eigh(m)
    return w
