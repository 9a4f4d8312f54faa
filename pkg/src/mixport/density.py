"""
Density-matrix semantics on top of plain complex matrices.

A bipartite matrix with dims (d_A, d_B) is read as a d_A x d_A grid of
d_B x d_B blocks; the row block index is the subsystem-A basis index.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import linalg
from .config import Config
from .exceptions import InvalidStateError, NotBipartiteError, NotHermitianError


def _check_dims(mat: np.ndarray, dims: Tuple[int, int]) -> Tuple[int, int]:
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise NotBipartiteError(f"dims must be a pair of positive integers, got {dims}")
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a * d_b != mat.shape[0]:
        raise NotBipartiteError(f"dims {dims} do not match matrix dimension {mat.shape[0]}")
    return d_a, d_b


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Unit-trace Hermitian positive semi-definite matrix with declared
    subsystem dimensions. Single systems use dims (d, 1).
    """
    mat: np.ndarray
    dims: Tuple[int, int] = None

    def __post_init__(self):
        mat = np.array(linalg.as_matrix(self.mat), copy=True)
        dims = self.dims if self.dims is not None else (mat.shape[0], 1)
        dims = _check_dims(mat, dims)

        try:
            eigs = linalg.hermitian_eigenvalues(mat)
        except NotHermitianError as e:
            raise InvalidStateError(str(e))
        tr = np.trace(mat)
        if abs(tr - 1) > Config.trace_tol:
            raise InvalidStateError(f"Trace must be 1, got {tr:.12g}")
        if eigs[-1] < -Config.psd_tol:
            raise InvalidStateError(f"Matrix is not positive semi-definite (min eigenvalue {eigs[-1]:.3e})")

        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def is_bipartite(self) -> bool:
        return self.dims[0] > 1 and self.dims[1] > 1

    def eigenvalues(self):
        return linalg.hermitian_eigenvalues(self.mat)

    def allclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        return self.dims == other.dims and np.allclose(self.mat, other.mat, rtol=0, atol=atol)


@dataclass(frozen=True)
class QubitState:
    """Input qubit [[x, y], [conj(y), 1-x]]."""
    x: float
    y: complex = 0j

    def __post_init__(self):
        x, y = float(self.x), complex(self.y)
        if not (math.isfinite(x) and cmath.isfinite(y)):
            raise InvalidStateError("QubitState parameters must be finite")
        if not 0.0 <= x <= 1.0:
            raise InvalidStateError(f"x must lie in [0, 1], got {x}")
        margin = x * (1 - x) - abs(y) ** 2
        if margin < -Config.psd_tol:
            raise InvalidStateError(f"x(1-x) - |y|^2 = {margin:.3e} < 0: state is not positive")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_polar(cls, x: float, abs_y: float, phase: float = 0.0) -> "QubitState":
        return cls(x, abs_y * cmath.exp(1j * phase))

    @property
    def abs_y(self) -> float:
        return abs(self.y)

    def matrix(self) -> np.ndarray:
        return np.array([[self.x, self.y], [self.y.conjugate(), 1 - self.x]], dtype=np.complex128)


def from_qubit(q: QubitState) -> DensityMatrix:
    """
    Builds the 2x2 density matrix of an input qubit.

    Raises:
        InvalidStateError: If the parameters do not give a positive matrix.
    """
    return DensityMatrix(q.matrix(), (2, 1))


def product_state(rho_a: DensityMatrix, rho_b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(linalg.tensor_product(rho_a.mat, rho_b.mat), (rho_a.dim, rho_b.dim))


def _require_bipartite(mat: np.ndarray, dims) -> Tuple[int, int]:
    d_a, d_b = _check_dims(mat, dims)
    if d_a < 2 or d_b < 2:
        raise NotBipartiteError(f"Both subsystem dimensions must exceed 1, got {dims}")
    return d_a, d_b


def reduce_matrix(mat, dims, keep: str) -> np.ndarray:
    """
    Partial trace on a plain matrix (no trace or positivity requirement).

    keep='A' gives the matrix of block traces, keep='B' the sum of the
    diagonal blocks.
    """
    mat = linalg.as_matrix(mat)
    d_a, d_b = _require_bipartite(mat, dims)
    blocks = mat.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.trace(blocks, axis1=1, axis2=3)
    if keep == "B":
        return np.trace(blocks, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_trace(rho: DensityMatrix, keep: str = "A") -> DensityMatrix:
    """
    Reduced state of one subsystem.

    Raises:
        NotBipartiteError: If either subsystem dimension is 1.
    """
    reduced = reduce_matrix(rho.mat, rho.dims, keep)
    return DensityMatrix(reduced, (reduced.shape[0], 1))


def transpose_blocks(mat, dims, on: str = "B") -> np.ndarray:
    """Partial transpose of a plain bipartite matrix."""
    mat = linalg.as_matrix(mat)
    d_a, d_b = _require_bipartite(mat, dims)
    t = mat.reshape(d_a, d_b, d_a, d_b)
    if on == "B":
        t = t.transpose(0, 3, 2, 1)
    elif on == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"on must be 'A' or 'B', got {on!r}")
    return t.reshape(d_a * d_b, d_a * d_b)


def partial_transpose(rho: DensityMatrix, on: str = "B") -> np.ndarray:
    """
    Each block rho_ij replaced by its transpose (on='B').

    The result is Hermitian with unit trace but need not be positive, so it
    is returned as a plain matrix.
    """
    return transpose_blocks(rho.mat, rho.dims, on)


def purity(rho) -> float:
    """Tr(rho^2) as sum of |rho_ij|^2 (exact for Hermitian input)."""
    mat = rho.mat if isinstance(rho, DensityMatrix) else linalg.as_matrix(rho)
    return float(np.sum(np.abs(mat) ** 2))


def rank(rho, tol: float = None) -> int:
    tol = Config.rank_tol if tol is None else tol
    mat = rho.mat if isinstance(rho, DensityMatrix) else rho
    return sum(1 for v in linalg.hermitian_eigenvalues(mat) if v > tol)
