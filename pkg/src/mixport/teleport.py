"""
The teleportation protocol on density matrices.

Qubit 1 is the input, qubit 2 Alice's half of the channel, qubit 3 Bob's;
the composite operator is laid out as q1 x q2 x q3. Alice projects (q1, q2)
onto a Bell state, Bob's conditional state is the normalized partial trace
over Alice's pair, and Bob undoes it with a fixed Pauli correction.
"""
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple, Union

import numpy as np

from . import channels, config, density, linalg
from .channels import ChannelSpec
from .config import Config
from .density import DensityMatrix, QubitState
from .exceptions import DegenerateOutcomeError, DegenerateOutcomeWarning, WrongShapeError


class BellOutcome(str, Enum):
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"

    @property
    def branch(self) -> str:
        return "phi" if self in (BellOutcome.PHI_PLUS, BellOutcome.PHI_MINUS) else "psi"


_S = 1 / math.sqrt(2)
BELL_VECTORS: Dict[BellOutcome, np.ndarray] = {
    BellOutcome.PHI_PLUS: np.array([_S, 0, 0, _S], dtype=np.complex128),
    BellOutcome.PHI_MINUS: np.array([_S, 0, 0, -_S], dtype=np.complex128),
    BellOutcome.PSI_PLUS: np.array([0, _S, _S, 0], dtype=np.complex128),
    BellOutcome.PSI_MINUS: np.array([0, _S, -_S, 0], dtype=np.complex128),
}

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

_CORRECTIONS = {
    BellOutcome.PHI_PLUS: SIGMA_Z,
    BellOutcome.PHI_MINUS: IDENTITY,
    BellOutcome.PSI_PLUS: SIGMA_Y,
    BellOutcome.PSI_MINUS: SIGMA_X,
}


@dataclass(frozen=True, eq=False)
class TeleportOutcome:
    """
    One Bell result. Degenerate outcomes (probability below the threshold)
    carry no conditional state.
    """
    outcome: BellOutcome
    probability: float
    bob_raw: Optional[DensityMatrix]
    bob_corrected: Optional[DensityMatrix]
    degenerate: bool = False


@dataclass(frozen=True, eq=False)
class TeleportRun:
    input: QubitState
    channel: ChannelSpec
    outcomes: Tuple[TeleportOutcome, ...]

    def outcome(self, label: BellOutcome) -> TeleportOutcome:
        for o in self.outcomes:
            if o.outcome == label:
                return o
        raise KeyError(label)

    @property
    def total_probability(self) -> float:
        return sum(o.probability for o in self.outcomes)


def bell_projectors() -> Dict[BellOutcome, np.ndarray]:
    """Rank-1 projectors onto the four Bell states, in enum order."""
    return {label: np.outer(v, v.conj()) for label, v in BELL_VECTORS.items()}


def correction(outcome: BellOutcome) -> np.ndarray:
    """Bob's Pauli correction: Phi+ -> Z, Phi- -> I, Psi+ -> Y, Psi- -> X."""
    return _CORRECTIONS[BellOutcome(outcome)].copy()


def _unnormalized_bob(rho1: DensityMatrix, rho23: DensityMatrix, outcome: BellOutcome) -> np.ndarray:
    if rho1.dim != 2:
        raise WrongShapeError(f"Input must be a single qubit, got dimension {rho1.dim}")
    if rho23.dims != (2, 2):
        raise WrongShapeError(f"Channel must be a two-qubit state with dims (2, 2), got {rho23.dims}")
    composite = linalg.tensor_product(rho1.mat, rho23.mat)
    proj = linalg.tensor_product(bell_projectors()[outcome], IDENTITY)
    projected = proj @ composite @ proj
    return density.reduce_matrix(projected, (4, 2), keep="B")


def measure(rho1: DensityMatrix, rho23: DensityMatrix,
            outcome: BellOutcome) -> Tuple[float, DensityMatrix]:
    """
    Probability of a Bell outcome on qubits 1-2 and Bob's normalized state.

    Raises:
        DegenerateOutcomeError: If the outcome probability is below 1e-14.
        WrongShapeError: If the operands are not a qubit and a two-qubit state.
    """
    outcome = BellOutcome(outcome)
    sigma = _unnormalized_bob(rho1, rho23, outcome)
    probability = float(np.trace(sigma).real)
    if probability < Config.degenerate_prob:
        raise DegenerateOutcomeError(
            f"Outcome {outcome.value} has probability {probability:.3e}; Bob's state is undefined"
        )
    return probability, DensityMatrix(sigma / probability, (2, 1))


def apply_correction(bob: DensityMatrix, outcome: BellOutcome) -> DensityMatrix:
    u = correction(outcome)
    return DensityMatrix(u @ bob.mat @ u.conj().T, (2, 1))


def _as_input(state: Union[QubitState, Tuple[float, complex]]) -> QubitState:
    if isinstance(state, QubitState):
        return state
    x, y = state
    return QubitState(x, y)


def run(state: Union[QubitState, Tuple[float, complex]],
        channel: Union[ChannelSpec, str]) -> TeleportRun:
    """
    Runs all four branches of the protocol.

    Args:
        state: Input qubit or an (x, y) pair.
        channel: ChannelSpec or its text form.

    Returns:
        TeleportRun with one TeleportOutcome per Bell state.
    """
    state = _as_input(state)
    spec = channels.parse(channel) if isinstance(channel, str) else channel
    rho1 = density.from_qubit(state)
    rho23 = channels.build(spec)

    outcomes = []
    for label in BellOutcome:
        try:
            probability, raw = measure(rho1, rho23, label)
        except DegenerateOutcomeError:
            if config.warnings_enabled():
                warnings.warn(
                    f"Bell outcome {label.value} has zero probability for channel {spec.to_text()}",
                    DegenerateOutcomeWarning,
                )
            outcomes.append(TeleportOutcome(label, 0.0, None, None, degenerate=True))
            continue
        outcomes.append(TeleportOutcome(label, probability, raw, apply_correction(raw, label)))
    return TeleportRun(state, spec, tuple(outcomes))


def conditional_state_closed_form(x: float, y: complex, a: float, b: float, c: complex,
                                  d: float, e: complex, outcome: BellOutcome) -> np.ndarray:
    """
    Bob's normalized state for an X-shaped channel from the Bell-diagonal
    terms of the composite operator, with N = x(a+b) + (1-x)(1-a-b) for the
    Phi branch and N1 = 1 - N for the Psi branch.
    """
    outcome = BellOutcome(outcome)
    yc = np.conj(y)
    rest = 1 - a - b - d
    sign = 1 if outcome in (BellOutcome.PHI_PLUS, BellOutcome.PSI_PLUS) else -1
    if outcome.branch == "phi":
        n = x * (a + b) + (1 - x) * (1 - a - b)
        off = sign * (yc * np.conj(c) + y * e)
        m = [[x * a + (1 - x) * d, off], [np.conj(off), x * b + (1 - x) * rest]]
    else:
        n = x * (1 - a - b) + (1 - x) * (a + b)
        off = sign * (y * np.conj(c) + yc * e)
        m = [[x * d + (1 - x) * a, off], [np.conj(off), x * rest + (1 - x) * b]]
    return np.array(m, dtype=np.complex128) / n


def outcome_probability_closed_form(x: float, a: float, b: float, outcome: BellOutcome) -> float:
    """N/2 for Phi outcomes, N1/2 for Psi outcomes."""
    n = x * (a + b) + (1 - x) * (1 - a - b)
    return n / 2 if BellOutcome(outcome).branch == "phi" else (1 - n) / 2
