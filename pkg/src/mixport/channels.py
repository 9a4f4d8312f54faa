"""
Two-qubit teleportation channels: the X-shaped general form, the MEMS
families by rank, and the Werner family.

Every catalog family carries its entangled weight on |Phi-><Phi-| (negative
corner entries), which is what the fixed Pauli correction in `teleport`
assumes.
"""
import re
import warnings
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from . import config, density
from .density import DensityMatrix
from .exceptions import ChannelRangeWarning, ChannelSpecError, InvalidParamsError, OutOfRangeError

FAMILIES = ("meps", "mems2", "mems3", "mems4", "werner", "xz", "mems")

_PARAM_NAMES: Dict[str, Tuple[str, ...]] = {
    "meps": (),
    "mems2": ("p1",),
    "mems3": ("p1",),
    "mems4": ("p1",),
    "werner": ("r",),
    "xz": ("a", "b", "c", "d", "e"),
    "mems": ("p1", "p2", "p3", "p4"),
}

# Parameter interval in which the family respects p1 >= p2 >= p3 >= p4.
_VALIDITY: Dict[str, Tuple[float, float]] = {
    "mems2": (0.5, 1.0),
    "mems3": (1.0 / 3.0, 0.5),
    "mems4": (0.25, 1.0),
}

# Interval in which the family matrix is at least a density matrix.
_PHYSICAL: Dict[str, Tuple[float, float]] = {
    "mems2": (0.0, 1.0),
    "mems3": (0.0, 0.5),
    "mems4": (0.0, 1.0),
}

_TOL = 1e-12


@dataclass(frozen=True)
class ChannelSpec:
    """
    A channel family with its parameters, e.g. ChannelSpec("mems4", (0.7,)).

    GeneralXZ ("xz") takes (a, b, c, d, e) with c and e complex; MemsGeneral
    ("mems") takes (p1, p2, p3, p4).
    """
    family: str
    params: Tuple[complex, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParamsError(f"Unknown channel family '{self.family}'. Supported: {', '.join(FAMILIES)}")
        names = _PARAM_NAMES[self.family]
        if len(self.params) != len(names):
            raise InvalidParamsError(
                f"Family '{self.family}' takes {len(names)} parameter(s) ({', '.join(names) or 'none'}), "
                f"got {len(self.params)}"
            )
        if self.family == "xz":
            a, b, c, d, e = self.params
            params = (_real(a, "a"), _real(b, "b"), complex(c), _real(d, "d"), complex(e))
        else:
            params = tuple(_real(p, n) for p, n in zip(self.params, names))
        object.__setattr__(self, "params", params)

    @classmethod
    def meps(cls) -> "ChannelSpec":
        return cls("meps")

    @classmethod
    def mems_rank2(cls, p1: float) -> "ChannelSpec":
        return cls("mems2", (p1,))

    @classmethod
    def mems_rank3(cls, p1: float) -> "ChannelSpec":
        return cls("mems3", (p1,))

    @classmethod
    def mems_rank4(cls, p1: float) -> "ChannelSpec":
        return cls("mems4", (p1,))

    @classmethod
    def werner(cls, r: float) -> "ChannelSpec":
        return cls("werner", (r,))

    @classmethod
    def general_xz(cls, a: float, b: float, c: complex, d: float, e: complex) -> "ChannelSpec":
        return cls("xz", (a, b, c, d, e))

    @classmethod
    def mems_general(cls, p1: float, p2: float, p3: float, p4: float) -> "ChannelSpec":
        return cls("mems", (p1, p2, p3, p4))

    @property
    def param_map(self) -> Dict[str, complex]:
        return dict(zip(_PARAM_NAMES[self.family], self.params))

    @property
    def in_validity_range(self) -> bool:
        """False when the family weights break the MEMS ordering (the warning flag)."""
        if self.family not in _VALIDITY:
            return True
        lo, hi = _VALIDITY[self.family]
        return lo - _TOL <= self.params[0] <= hi + _TOL

    def to_text(self) -> str:
        if not self.params:
            return self.family
        parts = [f"{n}={_format_number(v)}" for n, v in self.param_map.items()]
        return f"{self.family}:{','.join(parts)}"

    def __str__(self) -> str:
        return self.to_text()


def _real(value, name: str) -> float:
    v = complex(value)
    if abs(v.imag) > _TOL:
        raise InvalidParamsError(f"Parameter {name} must be real, got {value}")
    return float(v.real)


def _format_number(v) -> str:
    if isinstance(v, complex):
        sign = "+" if v.imag >= 0 else "-"
        return f"{v.real!r}{sign}{abs(v.imag)!r}i"
    return repr(float(v))


_COMPLEX_RE = re.compile(r"^[+-]?[0-9.eE+-]*i?$")


def _parse_number(text: str) -> complex:
    text = text.strip().replace(" ", "")
    if not text or not _COMPLEX_RE.match(text):
        raise ChannelSpecError(f"Cannot parse number '{text}'")
    try:
        return complex(text[:-1] + "j" if text.endswith("i") else text)
    except ValueError:
        raise ChannelSpecError(f"Cannot parse number '{text}'")


def parse(text: str) -> ChannelSpec:
    """
    Parses the canonical text form: 'meps', 'mems2:p1=0.6', 'werner:r=0.5',
    'xz:a=0.4,b=0.1,c=0,d=0.1,e=0.35', 'mems:p1=..,p2=..,p3=..,p4=..'.
    Complex values are written 're+imi'.

    Raises:
        ChannelSpecError: If the text is malformed.
        InvalidParamsError: If the parameters do not fit the family.
    """
    text = text.strip()
    family, _, rest = text.partition(":")
    family = family.strip().lower()
    if family not in FAMILIES:
        raise ChannelSpecError(f"Unknown channel family '{family}'. Supported: {', '.join(FAMILIES)}")

    values: Dict[str, complex] = {}
    if rest.strip():
        for item in rest.split(","):
            name, sep, raw = item.partition("=")
            if not sep:
                raise ChannelSpecError(f"Expected name=value in '{item}'")
            name = name.strip()
            if name in values:
                raise ChannelSpecError(f"Duplicate parameter '{name}' in '{text}'")
            values[name] = _parse_number(raw)

    names = _PARAM_NAMES[family]
    missing = [n for n in names if n not in values]
    unknown = [n for n in values if n not in names]
    if missing or unknown:
        raise ChannelSpecError(
            f"Family '{family}' expects parameters ({', '.join(names) or 'none'}); "
            f"missing {missing or 'none'}, unknown {unknown or 'none'}"
        )
    return ChannelSpec(family, tuple(values[n] for n in names))


def _x_matrix(a, b, c, d, e) -> np.ndarray:
    return np.array([
        [a, 0, 0, e],
        [0, b, c, 0],
        [0, np.conj(c), d, 0],
        [np.conj(e), 0, 0, 1 - a - b - d],
    ], dtype=np.complex128)


def _meps_matrix() -> np.ndarray:
    return _x_matrix(0.5, 0.0, 0.0, 0.0, -0.5)


def _mems_matrix(p1, p2, p3, p4) -> np.ndarray:
    return _x_matrix((p1 + p3) / 2, p2, 0.0, p4, (p3 - p1) / 2)


def _mems_rank2(p1) -> np.ndarray:
    return _x_matrix(p1 / 2, 1 - p1, 0.0, 0.0, -p1 / 2)


def _mems_rank3(p1) -> np.ndarray:
    return _x_matrix((1 - p1) / 2, p1, 0.0, 0.0, (1 - 3 * p1) / 2)


def _mems_rank4(p1) -> np.ndarray:
    return _x_matrix((1 + 2 * p1) / 6, (1 - p1) / 3, 0.0, (1 - p1) / 3, (1 - 4 * p1) / 6)


def _werner(r) -> np.ndarray:
    return _x_matrix((1 + r) / 4, (1 - r) / 4, 0.0, (1 - r) / 4, -r / 2)


def _warn_out_of_order(spec: ChannelSpec):
    if config.warnings_enabled():
        lo, hi = _VALIDITY[spec.family]
        warnings.warn(
            f"Channel {spec.to_text()} lies outside the ordered range p1 in [{lo:.4g}, {hi:.4g}]; "
            "weights are not p1 >= p2 >= p3 >= p4.",
            ChannelRangeWarning,
        )


def _check_general(spec: ChannelSpec):
    if spec.family == "werner":
        (r,) = spec.params
        if not -_TOL <= r <= 1 + _TOL:
            raise InvalidParamsError(f"Werner parameter r must lie in [0, 1], got {r}")
    elif spec.family == "mems":
        p = spec.params
        if any(v < -_TOL for v in p):
            raise InvalidParamsError(f"MEMS weights must be non-negative, got {p}")
        if abs(sum(p) - 1) > 1e-10:
            raise InvalidParamsError(f"MEMS weights must sum to 1, got {sum(p):.12g}")
        if not (p[0] + _TOL >= p[1] and p[1] + _TOL >= p[2] and p[2] + _TOL >= p[3]):
            raise InvalidParamsError(f"MEMS weights must satisfy p1 >= p2 >= p3 >= p4, got {p}")
    elif spec.family == "xz":
        a, b, c, d, e = spec.params
        rest = 1 - a - b - d
        if min(a, b, d) < -_TOL or rest < -_TOL:
            raise InvalidParamsError(f"Diagonal entries a, b, d, 1-a-b-d must be non-negative, got {a}, {b}, {d}, {rest}")
        if a * rest - abs(e) ** 2 < -_TOL:
            raise InvalidParamsError(f"Need a(1-a-b-d) >= |e|^2, got {a * rest:.6g} < {abs(e) ** 2:.6g}")
        if b * d - abs(c) ** 2 < -_TOL:
            raise InvalidParamsError(f"Need b*d >= |c|^2, got {b * d:.6g} < {abs(c) ** 2:.6g}")


def channel_matrix(spec: ChannelSpec) -> np.ndarray:
    """
    The 4x4 matrix of a channel without the density-matrix check.

    Single-parameter MEMS families accept any p1 in [0, 1] and warn with
    ChannelRangeWarning when p1 breaks the MEMS ordering; the matrix may then
    fail to be positive (rank-3 family above p1 = 1/2).

    Raises:
        InvalidParamsError: If a parameter is outside the family's domain.
    """
    family = spec.family
    if family == "meps":
        return _meps_matrix()
    if family in _VALIDITY:
        (p1,) = spec.params
        if not -_TOL <= p1 <= 1 + _TOL:
            raise InvalidParamsError(f"p1 must lie in [0, 1], got {p1}")
        if not spec.in_validity_range:
            _warn_out_of_order(spec)
        if family == "mems2":
            return _mems_rank2(p1)
        elif family == "mems3":
            return _mems_rank3(p1)
        else:
            return _mems_rank4(p1)

    _check_general(spec)
    if family == "werner":
        return _werner(spec.params[0])
    elif family == "mems":
        return _mems_matrix(*spec.params)
    else:
        return _x_matrix(*spec.params)


def build(spec: ChannelSpec) -> DensityMatrix:
    """
    Builds the channel as a validated two-qubit density matrix.

    Raises:
        InvalidParamsError: Names the violated constraint, including the case
            where an out-of-order family weight leaves the matrix non-positive.
    """
    mat = channel_matrix(spec)
    if spec.family in _PHYSICAL:
        lo, hi = _PHYSICAL[spec.family]
        p1 = spec.params[0]
        if not lo - _TOL <= p1 <= hi + _TOL:
            raise InvalidParamsError(
                f"Channel {spec.to_text()} is not positive semi-definite: "
                f"{spec.family} needs p1 in [{lo:.4g}, {hi:.4g}]"
            )
    return DensityMatrix(mat, (2, 2))


def werner_to_mems_p1(r: float) -> float:
    """p1 = (1 + 3r)/4."""
    if not 0.0 <= r <= 1.0:
        raise OutOfRangeError(f"r must lie in [0, 1], got {r}")
    return (1 + 3 * r) / 4


def mems_p1_to_werner(p1: float) -> float:
    """r = (4p1 - 1)/3."""
    if not 0.25 <= p1 <= 1.0:
        raise OutOfRangeError(f"p1 must lie in [1/4, 1], got {p1}")
    return (4 * p1 - 1) / 3


def expected_rank(spec: ChannelSpec) -> int:
    """Rank the case label promises at interior parameters."""
    if spec.family == "meps":
        return 1
    elif spec.family == "mems2":
        return 2
    elif spec.family == "mems3":
        return 3
    elif spec.family in ("mems4", "werner"):
        return 4
    return density.rank(build(spec))


def catalog() -> List[ChannelSpec]:
    """Fixed channel set used by the locality and Peres-Horodecki suites."""
    specs = [ChannelSpec.meps()]
    specs += [ChannelSpec.mems_rank2(p) for p in (0.5, 0.6, 0.75, 0.9, 1.0)]
    specs += [ChannelSpec.mems_rank3(p) for p in (1 / 3, 0.4, 0.45, 0.5)]
    specs += [ChannelSpec.mems_rank4(p) for p in (0.25, 0.4, 0.5, 0.7, 0.9, 1.0)]
    specs += [ChannelSpec.werner(r) for r in (0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0)]
    specs += [
        ChannelSpec.general_xz(0.4, 0.1, 0.0, 0.1, 0.35),
        ChannelSpec.general_xz(0.3, 0.2, 0.1 + 0.05j, 0.2, -0.2j),
        ChannelSpec.mems_general(0.5, 0.25, 0.15, 0.1),
    ]
    return specs


def is_symmetric_family(spec: ChannelSpec) -> bool:
    """
    Families whose reduced states are both I/2; their four corrected states
    coincide, so a run reports one uniform distortion.
    """
    return spec.family in ("meps", "mems4", "werner")
