"""Mixedness and correlation measures of reduced register states, and the
monotone bounding functions that convert entropies back into correlator
bounds (inverted numerically by bisection)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, qcore

DENSITY_TOL = 1e-10
_BISECT_RESIDUAL = 1e-12
_BISECT_WIDTH = 1e-13
_BISECT_MAX_ITER = 200


class BoundDomainError(ValueError):
    """Raised where an entropy lies below the region a bound constrains."""


def validate_density(rho: np.ndarray, dims: tuple[int, ...] | None = None) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if dims is not None and rho.shape[0] not in dims:
        raise ValueError(f"density matrix dimension {rho.shape[0]} not in {dims}")
    if linalg.hermiticity_defect(rho) > DENSITY_TOL:
        raise ValueError("density matrix is not Hermitian within tolerance")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > DENSITY_TOL:
        raise ValueError(f"density matrix trace {tr} is not 1")
    evals = linalg.hermitian_eigenvalues(rho)
    if evals[0] < -DENSITY_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {evals[0]}")
    return rho


def _spectrum(rho: np.ndarray, dims: tuple[int, ...] | None = None) -> np.ndarray:
    """Validated eigenvalues, clamped to [0, inf) and renormalized to sum 1."""
    validate_density(rho, dims)
    evals = np.maximum(linalg.hermitian_eigenvalues(rho), 0.0)
    return evals / evals.sum()


def _plogp(p: np.ndarray) -> float:
    """sum p log2 p with the 0 log 0 = 0 convention."""
    nz = p[p > 0.0]
    return float(np.sum(nz * np.log2(nz)))


def purity_entanglement(rho: np.ndarray) -> float:
    """2 (1 - Tr rho^2) of a single-qubit state: 0 pure, 1 maximally mixed."""
    p = _spectrum(rho, dims=(2,))
    return max(2.0 * (1.0 - float(np.sum(p * p))), 0.0) + 0.0


def von_neumann(rho: np.ndarray) -> float:
    """-Tr(rho log2 rho) for a one- or two-qubit density matrix."""
    p = _spectrum(rho, dims=(2, 4))
    return max(-_plogp(p), 0.0) + 0.0


def correlator(rho: np.ndarray, observable: np.ndarray) -> float:
    """Tr(rho O) for a Hermitian observable; the value must come out real."""
    rho = np.asarray(rho, dtype=complex)
    observable = np.asarray(observable, dtype=complex)
    if rho.shape != observable.shape or rho.ndim != 2:
        raise ValueError("state and observable dimensions do not match")
    if linalg.hermiticity_defect(observable) > DENSITY_TOL:
        raise ValueError("observable is not Hermitian within tolerance")
    val = complex(np.trace(rho @ observable))
    if abs(val.imag) > 1e-12:
        raise ValueError(f"correlator has imaginary residue {val.imag}")
    return val.real


def bloch_length(rho: np.ndarray) -> float:
    """Length of the Bloch vector of a single-qubit state."""
    cx = correlator(rho, qcore.gate("X"))
    cy = correlator(rho, qcore.gate("Y"))
    cz = correlator(rho, qcore.gate("Z"))
    return min(float(np.sqrt(cx * cx + cy * cy + cz * cz)), 1.0)


def _check_unit_interval(x: float, lo: float, hi: float, what: str) -> float:
    if not lo - 1e-12 <= x <= hi + 1e-12:
        raise ValueError(f"{what}={x} outside [{lo}, {hi}]")
    return min(max(float(x), lo), hi)


def f(c: float) -> float:
    """Binary entropy of (1+c)/2; strictly decreasing from f(0)=1 to f(1)=0."""
    c = _check_unit_interval(c, 0.0, 1.0, "correlator")
    p = np.array([(1.0 + c) / 2.0, (1.0 - c) / 2.0])
    return -_plogp(p)


def g(c: float) -> float:
    """Two-qubit analogue of f: g(c) = 1 + f(c), decreasing from 2 to 1.

    The weights are (1 +- c)/2 but the log arguments are (1 +- c)/4.
    """
    c = _check_unit_interval(c, 0.0, 1.0, "correlator")
    p = np.array([(1.0 + c) / 2.0, (1.0 - c) / 2.0])
    terms = p[p > 0.0]
    return -float(np.sum(terms * np.log2(terms / 2.0)))


def _bisect_decreasing(fn, s: float, lo: float, hi: float) -> float:
    # fn is strictly decreasing on [lo, hi] with fn(lo) >= s >= fn(hi)
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        val = fn(mid)
        if abs(val - s) <= _BISECT_RESIDUAL:
            return mid
        if val > s:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_WIDTH:
            return 0.5 * (lo + hi)
    return 0.5 * (lo + hi)


def f_inverse(s: float) -> float:
    """The unique c in [0, 1] with f(c) = s."""
    s = _check_unit_interval(s, 0.0, 1.0, "entropy")
    if s == 0.0:
        return 1.0
    if s == 1.0:
        return 0.0
    return _bisect_decreasing(f, s, 0.0, 1.0)


def g_inverse(s: float) -> float:
    """The unique c in [0, 1] with g(c) = s, defined for s in [1, 2]."""
    if s < 1.0 - 1e-12:
        raise BoundDomainError(
            f"g_inverse undefined for entropy {s} < 1: the correlator is "
            "unconstrained there"
        )
    s = _check_unit_interval(s, 1.0, 2.0, "entropy")
    if s == 1.0:
        return 1.0
    if s == 2.0:
        return 0.0
    return _bisect_decreasing(g, s, 0.0, 1.0)


@dataclass
class EntanglementReport:
    """Measures of one reduced input state.

    purity_S and bloch_length_r are defined for single-qubit reductions
    only and are None for a two-qubit reduction.
    """

    purity_S: float | None
    von_neumann: float
    correlator: float
    bloch_length_r: float | None


def single_qubit_report(rho: np.ndarray) -> EntanglementReport:
    """Measures of a single-qubit reduced state (correlator is <Z>)."""
    return EntanglementReport(
        purity_S=purity_entanglement(rho),
        von_neumann=von_neumann(rho),
        correlator=correlator(rho, qcore.gate("Z")),
        bloch_length_r=bloch_length(rho),
    )


def two_qubit_report(rho: np.ndarray) -> EntanglementReport:
    """Measures of a two-qubit reduced state (correlator is <Z(x)Z>)."""
    zz = linalg.kron(qcore.gate("Z"), qcore.gate("Z"))
    validate_density(rho, dims=(4,))
    return EntanglementReport(
        purity_S=None,
        von_neumann=von_neumann(rho),
        correlator=correlator(rho, zz),
        bloch_length_r=None,
    )
