"""Entanglement and mixedness measures for two-qubit channels and qubits."""
from dataclasses import dataclass

import numpy as np

from . import density, linalg
from .density import DensityMatrix
from .exceptions import WrongShapeError

MEASURES = ("concurrence", "min_pt_eigenvalue", "linear_entropy")

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)

# Spin-flip eigenvalues below this are rounding noise of exact zeros; their
# square roots would otherwise leak ~1e-8 into the concurrence.
_SPECTRUM_FLOOR = 1e-13

# Normalizes the maximally mixed two-qubit state to 1; used for every dimension.
_LINEAR_ENTROPY_SCALE = 4.0 / 3.0


@dataclass(frozen=True)
class MeasureValue:
    value: float
    measure: str


def _two_qubit(rho: DensityMatrix) -> np.ndarray:
    if rho.dims != (2, 2):
        raise WrongShapeError(f"Expected a two-qubit state with dims (2, 2), got {rho.dims}")
    return rho.mat


def spin_flip_roots(rho: DensityMatrix) -> np.ndarray:
    """Descending square roots of the spectrum of rho (Y x Y) rho* (Y x Y)."""
    mat = _two_qubit(rho)
    r = mat @ _SPIN_FLIP @ mat.conj() @ _SPIN_FLIP
    eigs = np.linalg.eigvals(r).real
    eigs[np.abs(eigs) < _SPECTRUM_FLOOR] = 0.0
    return np.sort(np.sqrt(np.clip(eigs, 0.0, None)))[::-1]


def concurrence(rho: DensityMatrix) -> float:
    """
    Wootters concurrence max(0, l1 - l2 - l3 - l4).

    Raises:
        WrongShapeError: If `rho` is not a two-qubit state.
    """
    lam = spin_flip_roots(rho)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def min_pt_eigenvalue(rho: DensityMatrix) -> float:
    """Smallest eigenvalue of the partial transpose; negative iff entangled for two qubits."""
    _two_qubit(rho)
    return linalg.min_eigenvalue(density.partial_transpose(rho, on="B"))


def linear_entropy(rho) -> float:
    """
    S_L = (4/3)(1 - Tr rho^2) for any dimension.

    Accepts a DensityMatrix or a plain Hermitian matrix, so that family
    matrices outside their physical range can still be charted.
    """
    return _LINEAR_ENTROPY_SCALE * (1.0 - density.purity(rho))


def measure(rho: DensityMatrix, name: str) -> MeasureValue:
    if name == "concurrence":
        return MeasureValue(concurrence(rho), name)
    elif name == "min_pt_eigenvalue":
        return MeasureValue(min_pt_eigenvalue(rho), name)
    elif name == "linear_entropy":
        return MeasureValue(linear_entropy(rho), name)
    else:
        raise ValueError(f"Unsupported measure: {name}. Supported measures: {', '.join(MEASURES)}")


def is_entangled(rho: DensityMatrix, tol: float = 1e-10) -> bool:
    """Peres-Horodecki test (necessary and sufficient for two qubits)."""
    return min_pt_eigenvalue(rho) < -tol
