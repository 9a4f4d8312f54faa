"""
Executable checks of positivity properties of bipartite block matrices.

A bipartite matrix with dims (d_A, d_B) is a d_A x d_A grid of d_B x d_B
blocks rho_ij. Each check returns a PropertyReport entry for one matrix;
`run_suite` folds many seeded random samples into a single report.

Some of the properties are claims under test rather than theorems (the
converse of P1, the determinant-of-determinants bound and the lower links of
the P3 determinant chain); the harness reports their counterexamples with a
witness matrix instead of failing.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from . import density, linalg
from .config import Config
from .density import DensityMatrix
from .exceptions import NotBipartiteError, WrongShapeError

PROPERTY_IDS = (
    "P1_forward",
    "P1_converse",
    "P2_det",
    "P2_trace",
    "P3_trace_chain",
    "P3_det_chain",
    "P3_fischer",
)

# Properties that hold for every positive semi-definite input.
ASSERTED = ("P1_forward", "P2_trace", "P3_trace_chain", "P3_fischer")
CLAIMS_UNDER_TEST = ("P1_converse", "P2_det", "P3_det_chain")


@dataclass(frozen=True, eq=False)
class PropertyReport:
    """
    Aggregated outcome of one property.

    `worst_margin` is the smallest slack seen (negative means violated);
    `links` keeps the worst margin of each inequality link of a chain.
    """
    property_id: str
    samples: int
    violations: int
    worst_margin: float
    witness: Optional[np.ndarray] = None
    links: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.violations > self.samples:
            raise ValueError("violations cannot exceed samples")
        if (self.witness is not None) != (self.violations > 0):
            raise ValueError("witness must be present exactly when there are violations")
        if self.witness is not None:
            w = np.array(self.witness, copy=True)
            w.setflags(write=False)
            object.__setattr__(self, "witness", w)

    @property
    def holds(self) -> bool:
        return self.violations == 0

    @property
    def asserted(self) -> bool:
        return self.property_id in ASSERTED


MatrixLike = Union[DensityMatrix, np.ndarray]


def _unpack(rho: MatrixLike, dims: Optional[Tuple[int, int]]) -> Tuple[np.ndarray, Tuple[int, int]]:
    if isinstance(rho, DensityMatrix):
        mat, dims = rho.mat, (dims or rho.dims)
    else:
        mat = linalg.as_matrix(rho)
        if dims is None:
            raise NotBipartiteError("dims are required for a plain matrix")
    if len(dims) != 2 or dims[0] * dims[1] != mat.shape[0]:
        raise NotBipartiteError(f"dims {dims} do not match matrix dimension {mat.shape[0]}")
    if dims[0] < 2:
        raise NotBipartiteError(f"Need at least two row blocks, got dims {dims}")
    return mat, (int(dims[0]), int(dims[1]))


def block(mat: np.ndarray, dims: Tuple[int, int], i: int, j: int) -> np.ndarray:
    d_b = dims[1]
    return mat[i * d_b:(i + 1) * d_b, j * d_b:(j + 1) * d_b]


def block_trace_matrix(rho: MatrixLike, dims: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """[tr rho_ij]."""
    mat, dims = _unpack(rho, dims)
    d_a = dims[0]
    return np.array([[np.trace(block(mat, dims, i, j)) for j in range(d_a)] for i in range(d_a)])


def block_det_matrix(rho: MatrixLike, dims: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """[det rho_ij]."""
    mat, dims = _unpack(rho, dims)
    d_a = dims[0]
    return np.array([[np.linalg.det(block(mat, dims, i, j)) for j in range(d_a)] for i in range(d_a)])


def _entry(property_id: str, margin: float, mat: np.ndarray,
           links: Optional[Dict[str, float]] = None) -> PropertyReport:
    violated = margin < -Config.property_slack
    return PropertyReport(
        property_id=property_id,
        samples=1,
        violations=int(violated),
        worst_margin=float(margin),
        witness=mat if violated else None,
        links=dict(links or {}),
    )


def _min_eig(m: np.ndarray) -> float:
    return linalg.min_eigenvalue(m)


def check_p1(rho: MatrixLike, direction: str = "forward",
             dims: Optional[Tuple[int, int]] = None) -> PropertyReport:
    """
    P1: a block matrix is PSD iff its diagonal blocks are PSD.

    forward: margin is the smallest eigenvalue over the diagonal blocks of a
    PSD input. converse: when every diagonal block is PSD the margin is the
    smallest eigenvalue of the whole matrix; otherwise the premise fails and
    the sample counts as holding.

    Raises:
        NotBipartiteError: If dims do not describe at least two row blocks.
    """
    mat, dims = _unpack(rho, dims)
    diag_min = min(_min_eig(block(mat, dims, i, i)) for i in range(dims[0]))
    if direction == "forward":
        return _entry("P1_forward", diag_min, mat)
    elif direction == "converse":
        if diag_min < -Config.psd_tol:
            return _entry("P1_converse", math.inf, mat)
        return _entry("P1_converse", _min_eig(mat), mat)
    raise ValueError(f"direction must be 'forward' or 'converse', got {direction!r}")


def check_p2(rho: MatrixLike, dims: Optional[Tuple[int, int]] = None) -> Tuple[PropertyReport, PropertyReport]:
    """
    P2: det([det rho_ij]) <= det(rho) (claim under test) and [tr rho_ij] is
    PSD.

    Returns:
        (P2_det entry, P2_trace entry)
    """
    mat, dims = _unpack(rho, dims)
    det_lhs = np.linalg.det(block_det_matrix(mat, dims)).real
    det_rhs = np.linalg.det(mat).real
    det_entry = _entry("P2_det", det_rhs - det_lhs, mat)
    trace_entry = _entry("P2_trace", _min_eig(block_trace_matrix(mat, dims)), mat)
    return det_entry, trace_entry


def check_p3(rho: MatrixLike, dims: Optional[Tuple[int, int]] = None) -> Tuple[PropertyReport, PropertyReport, PropertyReport]:
    """
    P3 for 2 x d block matrices [[A, B], [B^dagger, C]]:

        tr(B^dagger B) <= sqrt(tr A^2 tr C^2) <= tr A tr C
        0 <= det A det C - |det B|^2 <= det rho <= det A det C

    The trace chain and the Fischer link det rho <= det A det C are
    asserted; the two lower determinant links are a claim under test.

    Returns:
        (P3_trace_chain, P3_det_chain, P3_fischer) entries.

    Raises:
        WrongShapeError: If d_A != 2.
    """
    mat, dims = _unpack(rho, dims)
    if dims[0] != 2:
        raise WrongShapeError(f"P3 needs a 2 x d block matrix, got dims {dims}")
    a, b, c = block(mat, dims, 0, 0), block(mat, dims, 0, 1), block(mat, dims, 1, 1)

    cross = np.trace(b.conj().T @ b).real
    geo = math.sqrt(max(np.trace(a @ a).real * np.trace(c @ c).real, 0.0))
    prod = (np.trace(a) * np.trace(c)).real
    trace_links = {"cross<=geometric": geo - cross, "geometric<=product": prod - geo}

    det_a, det_c = np.linalg.det(a).real, np.linalg.det(c).real
    det_rho = np.linalg.det(mat).real
    lower = det_a * det_c - abs(np.linalg.det(b)) ** 2
    det_links = {"0<=lower": lower, "lower<=det": det_rho - lower}

    return (
        _entry("P3_trace_chain", min(trace_links.values()), mat, trace_links),
        _entry("P3_det_chain", min(det_links.values()), mat, det_links),
        _entry("P3_fischer", det_a * det_c - det_rho, mat, {"det<=fischer": det_a * det_c - det_rho}),
    )


def random_psd(rng: np.random.Generator, dim: int) -> np.ndarray:
    """G G^dagger / tr, with G of independent standard-normal real and imaginary parts."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_block_diag_psd(rng: np.random.Generator, dims: Tuple[int, int], scale: float = 1.0) -> np.ndarray:
    """
    Hermitian matrix with PSD diagonal blocks and random off-diagonal blocks;
    feeds the converse of P1, which such matrices often break.
    """
    d_a, d_b = dims
    n = d_a * d_b
    m = np.zeros((n, n), dtype=np.complex128)
    for i in range(d_a):
        m[i * d_b:(i + 1) * d_b, i * d_b:(i + 1) * d_b] = random_psd(rng, d_b)
        for j in range(i + 1, d_a):
            off = scale * (rng.standard_normal((d_b, d_b)) + 1j * rng.standard_normal((d_b, d_b))) / d_b
            m[i * d_b:(i + 1) * d_b, j * d_b:(j + 1) * d_b] = off
            m[j * d_b:(j + 1) * d_b, i * d_b:(i + 1) * d_b] = off.conj().T
    return m


def p1_converse_witness() -> Tuple[np.ndarray, Tuple[int, int]]:
    """[[1, 2], [2, 1]] with 1x1 blocks: PSD diagonal blocks, eigenvalue -1."""
    return np.array([[1, 2], [2, 1]], dtype=np.complex128), (2, 1)


def _check_for(property_id: str) -> Callable[[np.ndarray, Tuple[int, int]], PropertyReport]:
    if property_id == "P1_forward":
        return lambda m, d: check_p1(m, "forward", d)
    elif property_id == "P1_converse":
        return lambda m, d: check_p1(m, "converse", d)
    elif property_id == "P2_det":
        return lambda m, d: check_p2(m, d)[0]
    elif property_id == "P2_trace":
        return lambda m, d: check_p2(m, d)[1]
    elif property_id == "P3_trace_chain":
        return lambda m, d: check_p3(m, d)[0]
    elif property_id == "P3_det_chain":
        return lambda m, d: check_p3(m, d)[1]
    elif property_id == "P3_fischer":
        return lambda m, d: check_p3(m, d)[2]
    raise ValueError(f"Unknown property: {property_id}. Supported: {', '.join(PROPERTY_IDS)}")


def merge(reports: List[PropertyReport]) -> PropertyReport:
    """Folds entries in order; the witness is the one with the worst margin."""
    if not reports:
        raise ValueError("Nothing to merge")
    worst = min(reports, key=lambda r: r.worst_margin)
    violating = [r for r in reports if r.violations]
    witness_src = min(violating, key=lambda r: r.worst_margin) if violating else None
    links: Dict[str, float] = {}
    for r in reports:
        for name, margin in r.links.items():
            links[name] = min(links.get(name, math.inf), margin)
    return PropertyReport(
        property_id=reports[0].property_id,
        samples=sum(r.samples for r in reports),
        violations=sum(r.violations for r in reports),
        worst_margin=worst.worst_margin,
        witness=witness_src.witness if witness_src else None,
        links=links,
    )


def run_suite(property_id: str, samples: int, seed: int,
              dims: Tuple[int, int] = (2, 2), workers: int = 1) -> PropertyReport:
    """
    Evaluates a property on `samples` seeded random matrices.

    Every sample draws from its own child of SeedSequence(seed), so the
    report is identical for any number of workers.
    """
    check = _check_for(property_id)
    children = np.random.SeedSequence(seed).spawn(samples)

    def one(child: np.random.SeedSequence) -> PropertyReport:
        rng = np.random.default_rng(child)
        if property_id == "P1_converse":
            mat = random_block_diag_psd(rng, dims)
        else:
            mat = random_psd(rng, dims[0] * dims[1])
        return check(mat, dims)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(one, children))
    else:
        entries = [one(child) for child in children]
    return merge(entries)


def reduced_trace_matches(rho: DensityMatrix) -> bool:
    """[tr rho_ij] is bit-identical to the partial trace keeping A."""
    return np.array_equal(block_trace_matrix(rho), density.partial_trace(rho, keep="A").mat)
