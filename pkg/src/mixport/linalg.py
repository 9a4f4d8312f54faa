"""
Dense complex matrix arithmetic for the small operators used in the protocol
(single qubit, two qubits, three qubits and the 2x3 blocks of the property
checks).

Every function takes and returns `numpy.ndarray` of dtype complex128 and
rejects non-square or non-finite input.
"""
from typing import List

import numpy as np

from .config import Config
from .exceptions import DimensionMismatchError, NotHermitianError

ALLOWED_DIMS = (1, 2, 3, 4, 6, 8)


def as_matrix(m) -> np.ndarray:
    """Coerces `m` into a finite square complex matrix."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] not in ALLOWED_DIMS:
        raise DimensionMismatchError(f"Unsupported dimension {arr.shape[0]}; allowed: {ALLOWED_DIMS}")
    if not np.all(np.isfinite(arr)):
        raise DimensionMismatchError("Matrix contains NaN or Inf entries")
    return arr


def _same_shape(a: np.ndarray, b: np.ndarray, op: str):
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Cannot {op} matrices of shapes {a.shape} and {b.shape}")


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; entry (i*db+k, j*db+l) = a[i,j]*b[k,l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def trace(m) -> complex:
    return complex(np.trace(as_matrix(m)))


def determinant(m) -> complex:
    # LAPACK getrf: LU with partial pivoting.
    return complex(np.linalg.det(as_matrix(m)))


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b, "multiply")
    return a @ b


def mat_add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b, "add")
    return a + b


def mat_sub(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b, "subtract")
    return a - b


def mat_scale(m, factor: complex) -> np.ndarray:
    return complex(factor) * as_matrix(m)


def hermiticity_defect(m) -> float:
    """max |m[i,j] - conj(m[j,i])|."""
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = None) -> bool:
    tol = Config.herm_tol if tol is None else tol
    return hermiticity_defect(m) <= tol


def hermitian_eigenvalues(m) -> List[float]:
    """
    Real eigenvalues of a Hermitian matrix, sorted descending.

    Raises:
        NotHermitianError: If the matrix deviates from its adjoint by more
            than the Hermiticity tolerance.
    """
    m = as_matrix(m)
    defect = hermiticity_defect(m)
    if defect > Config.herm_tol:
        raise NotHermitianError(f"Matrix is not Hermitian (max deviation {defect:.3e})")
    # eigvalsh reads one triangle only; symmetrize so both triangles count.
    vals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return [float(v) for v in vals[::-1]]


def min_eigenvalue(m) -> float:
    return hermitian_eigenvalues(m)[-1]


def is_psd(m, tol: float = None) -> bool:
    tol = Config.psd_tol if tol is None else tol
    return min_eigenvalue(m) >= -tol
