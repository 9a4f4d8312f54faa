"""
Distortion between the input qubit and Bob's corrected state.

Distortion is the squared Hilbert-Schmidt distance Tr((a - b)^2). The closed
forms below hold for the catalog channels; for x = 1/2 the Phi- and
Psi-branch forms coincide and reduce to D12, D34 and D56.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from . import channels, density, entanglement, linalg, teleport
from .channels import ChannelSpec
from .density import DensityMatrix, QubitState
from .exceptions import DimensionMismatchError, OutOfRangeError

BRANCHES = ("phi", "psi", "uniform")
SWEEP_COLUMNS = ("family", "p1_or_r", "abs_y", "branch", "D_pipeline", "D_closed_form", "abs_err")


@dataclass(frozen=True)
class DistortionRecord:
    channel: ChannelSpec
    input: QubitState
    outcome_class: str
    value: float


@dataclass(frozen=True)
class SweepRow:
    family: str
    p1_or_r: float
    abs_y: float
    branch: str
    D_pipeline: float
    D_closed_form: float

    @property
    def abs_err(self) -> float:
        return abs(self.D_pipeline - self.D_closed_form)

    def as_row(self) -> tuple:
        return (self.family, self.p1_or_r, self.abs_y, self.branch, self.D_pipeline, self.D_closed_form, self.abs_err)


def _mat(m) -> np.ndarray:
    return m.mat if isinstance(m, DensityMatrix) else linalg.as_matrix(m)


def hs_distance_sq(a, b) -> float:
    """
    Tr((a - b)^2) computed entrywise as sum |a_ij - b_ij|^2.

    Raises:
        DimensionMismatchError: If the operands differ in shape.
    """
    a, b = _mat(a), _mat(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Cannot compare matrices of shapes {a.shape} and {b.shape}")
    return float(np.sum(np.abs(a - b) ** 2))


def _check_unit(value: float, name: str, lo: float = 0.0, hi: float = 1.0):
    if not lo <= value <= hi:
        raise OutOfRangeError(f"{name} must lie in [{lo:.4g}, {hi:.4g}], got {value}")


def _mems_p1(family: str, param: float) -> float:
    if family == "werner":
        return channels.werner_to_mems_p1(param)
    return param


def closed_form(family: str, branch: str, x: float, y: complex, param: Optional[float] = None) -> float:
    """
    Closed-form distortion for a catalog family.

    Args:
        family: 'meps', 'mems2', 'mems3', 'mems4' or 'werner'.
        branch: 'phi' (Phi outcomes), 'psi' (Psi outcomes) or 'uniform'
            (rank-4, Werner and MEPS, where all outcomes agree).
        x, y: Input qubit parameters.
        param: p1 for the MEMS families, r for Werner; unused for MEPS.

    Raises:
        OutOfRangeError: On parameters outside [0, 1] or an unknown branch.
    """
    if branch not in BRANCHES:
        raise OutOfRangeError(f"Unknown branch '{branch}'. Supported: {', '.join(BRANCHES)}")
    _check_unit(x, "x")
    y2 = abs(y) ** 2
    if family == "meps":
        return 0.0
    if param is None:
        raise OutOfRangeError(f"Family '{family}' needs a channel parameter")
    _check_unit(param, "r" if family == "werner" else "p1")

    if family in ("mems4", "werner"):
        p1 = _mems_p1(family, param)
        return 8 * (1 - p1) ** 2 * ((2 * x - 1) ** 2 + 4 * y2) / 9
    if branch == "uniform":
        raise OutOfRangeError(f"Family '{family}' has distinct Phi and Psi branches")

    p1 = param
    if family == "mems2":
        if branch == "phi":
            n = x * (1 - p1 / 2) + (1 - x) * p1 / 2
            return 2 / n ** 2 * (x ** 2 * (1 - p1) ** 2 * (x ** 2 + y2))
        n1 = x * p1 / 2 + (1 - x) * (1 - p1 / 2)
        return 2 / n1 ** 2 * ((1 - x) ** 2 * (1 - p1) ** 2 * ((1 - x) ** 2 + y2))
    if family == "mems3":
        if branch == "phi":
            n = x * (1 + p1) / 2 + (1 - x) * (1 - p1) / 2
            return 2 / n ** 2 * (x ** 4 * p1 ** 2 + y2 * (1 - 2 * p1 + p1 * x) ** 2)
        n1 = x * (1 - p1) / 2 + (1 - x) * (1 + p1) / 2
        return 2 / n1 ** 2 * ((1 - x) ** 4 * p1 ** 2 + y2 * (1 - p1 - x * p1) ** 2)
    raise OutOfRangeError(f"No closed-form distortion for family '{family}'")


def d12(p1: float, abs_y: float) -> float:
    return 2 * (1 - p1) ** 2 * (0.25 + abs_y ** 2)


def d34(p1: float, abs_y: float) -> float:
    return 4 * (p1 ** 2 / 8 + 2 * abs_y ** 2 * (1 - 1.5 * p1) ** 2)


def d56(p1: float, abs_y: float) -> float:
    return 32 * (1 - p1) ** 2 * abs_y ** 2 / 9


def d56_werner(r: float, abs_y: float) -> float:
    return 2 * (1 - r) ** 2 * abs_y ** 2


def corrected_state_closed_form(family: str, branch: str, x: float, y: complex, param: float) -> np.ndarray:
    """Bob's state after the Pauli correction, for the rank-2/3/4 and Werner families."""
    yc = np.conj(y)
    if family in ("mems4", "werner"):
        p1 = _mems_p1(family, param)
        off = (4 * p1 - 1) / 3
        m = [[x * (2 * p1 + 1) / 3 + 2 * (1 - x) * (1 - p1) / 3, y * off],
             [yc * off, 2 * x * (1 - p1) / 3 + (1 - x) * (1 + 2 * p1) / 3]]
        return np.array(m, dtype=np.complex128)

    p1 = param
    if family == "mems2":
        if branch == "phi":
            n = x * (1 - p1 / 2) + (1 - x) * p1 / 2
            m = [[x * p1 / 2, y * p1 / 2], [yc * p1 / 2, x * (1 - p1) + (1 - x) * p1 / 2]]
        else:
            n = x * p1 / 2 + (1 - x) * (1 - p1 / 2)
            m = [[x * p1 / 2 + (1 - x) * (1 - p1), y * p1 / 2], [yc * p1 / 2, (1 - x) * p1 / 2]]
    elif family == "mems3":
        off = (3 * p1 - 1) / 2
        if branch == "phi":
            n = x * (1 + p1) / 2 + (1 - x) * (1 - p1) / 2
            m = [[x * (1 - p1) / 2, y * off], [yc * off, x * p1 + (1 - x) * (1 - p1) / 2]]
        else:
            n = x * (1 - p1) / 2 + (1 - x) * (1 + p1) / 2
            m = [[x * (1 - p1) / 2 + (1 - x) * p1, y * off], [yc * off, (1 - x) * (1 - p1) / 2]]
    else:
        raise OutOfRangeError(f"No closed-form corrected state for family '{family}'")
    return np.array(m, dtype=np.complex128) / n


def crossing_y2(p1: float) -> float:
    """
    |y|^2 at which D12 = D34 for 0 <= p1 <= 1/2 (point P).

    D34 - D12 = (2p1 - 1)(1/2 + 2|y|^2 (4p1 - 3)), so the root is
    1 / (4(3 - 4p1)). At p1 = 1/2 the two curves coincide; the value returned
    there is the continuous limit 1/4.
    """
    _check_unit(p1, "p1", 0.0, 0.5)
    return 1 / (4 * (3 - 4 * p1))


def printed_crossing_y2(p1: float) -> float:
    """The crossing as printed alongside the D12/D34 ordering; kept as a claim under test."""
    _check_unit(p1, "p1", 0.0, 0.5)
    return (1 - 2 * p1) / (4 * (8 * p1 ** 2 - 4 * p1 + 3))


def bisect_crossing_y2(p1: float, xtol: float = 1e-14) -> float:
    """Root of D12 - D34 in |y|^2 on [0, 1/4] by bisection."""
    _check_unit(p1, "p1", 0.0, 0.5)

    def gap(y2: float) -> float:
        return d12(p1, math.sqrt(y2)) - d34(p1, math.sqrt(y2))

    return optimize.bisect(gap, 0.0, 0.25, xtol=xtol)


def werner_average_distortion(r: float) -> float:
    """
    Integral of 2(1-r)^2 |y|^2 over |y| in [0, 1/2] with unit weight,
    evaluated by quadrature. Equals (1-r)^2 / 12.
    """
    _check_unit(r, "r")
    value, _ = integrate.quad(lambda t: d56_werner(r, t), 0.0, 0.5)
    return value


def werner_average_closed_form(r: float) -> float:
    _check_unit(r, "r")
    return (1 - r) ** 2 / 12


def input_linear_entropy(abs_y: float) -> float:
    """S_L of the x = 1/2 input class: (8/3)(1/4 - |y|^2)."""
    return 8 * (0.25 - abs_y ** 2) / 3


def channel_linear_entropy(family: str, p1: float) -> float:
    """S_L of the family matrix, including out-of-order p1 where the matrix is not positive."""
    return entanglement.linear_entropy(channels.channel_matrix(ChannelSpec(family, (p1,))))


def linear_entropy_closed_form(family: str, p1: float) -> float:
    if family == "mems2":
        return 8 * p1 * (1 - p1) / 3
    elif family == "mems3":
        return 8 * p1 * (2 - 3 * p1) / 3
    elif family == "mems4":
        return 4 * (1 - p1 ** 2 - (1 - p1) ** 2 / 3) / 3
    raise OutOfRangeError(f"No closed-form linear entropy for family '{family}'")


def branch_distortions(run: "teleport.TeleportRun") -> List[DistortionRecord]:
    """
    One record per outcome class of a run: 'uniform' for families whose four
    corrected states agree, otherwise 'phi' and 'psi'. Degenerate outcomes
    are skipped.
    """
    rho1 = density.from_qubit(run.input).mat
    per_branch = {}
    for o in run.outcomes:
        if o.degenerate:
            continue
        per_branch.setdefault(o.outcome.branch, hs_distance_sq(rho1, o.bob_corrected))

    if channels.is_symmetric_family(run.channel) and per_branch:
        value = next(iter(per_branch.values()))
        return [DistortionRecord(run.channel, run.input, "uniform", value)]
    return [DistortionRecord(run.channel, run.input, b, v) for b, v in sorted(per_branch.items())]


def sweep(family: str, params: Sequence[float], abs_ys: Sequence[float],
          phases: Iterable[float] = (0.0,), x: float = 0.5) -> List[SweepRow]:
    """
    Pipeline distortion against the closed form over a (param, |y|, arg y)
    grid. Rows are ordered by param, then |y|, then phase, then branch.
    """
    phases = tuple(phases)
    rows = []
    for param in params:
        spec = ChannelSpec(family, (param,)) if family != "meps" else ChannelSpec.meps()
        for abs_y in abs_ys:
            for phase in phases:
                state = QubitState.from_polar(x, abs_y, phase)
                for rec in branch_distortions(teleport.run(state, spec)):
                    expected = closed_form(family, rec.outcome_class, x, state.y, param)
                    rows.append(SweepRow(family, param, abs_y, rec.outcome_class, rec.value, expected))
    return rows
