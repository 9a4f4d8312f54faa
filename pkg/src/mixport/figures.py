"""
Figure data: distortion against |y| for fixed p1 (fig1-fig4) and channel
linear entropy against p1 (fig5), one CSV per figure with columns
param,abs_y,series,value.

Curves come from the closed forms. Each fig5 series runs over its own p1
range: rank 2 on [0, 1], rank 3 on [0, 2/3] (past p1 = 1/2 its matrix is no
longer a density matrix, and the entropy reaches zero at 2/3), rank 4 on
[1/4, 1].
"""
import os
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import metrics
from .config import Config
from .serializer import csv_text, write_csv

HEADER = ("param", "abs_y", "series", "value")

Row = Tuple[float, Optional[float], str, float]

_DISTORTION_FIGURES: Dict[str, Tuple[float, Tuple[str, ...]]] = {
    "fig1": (0.2, ("D12",)),
    "fig2": (0.4, ("D12", "D34")),
    "fig3": (0.6, ("D12", "D34", "D56")),
    "fig4": (0.8, ("D12", "D34", "D56")),
}

_DISTORTIONS = {"D12": metrics.d12, "D34": metrics.d34, "D56": metrics.d56}

_ENTROPY_SERIES: Tuple[Tuple[str, str, Fraction, Fraction], ...] = (
    ("SL_r2", "mems2", Fraction(0), Fraction(1)),
    ("SL_r3", "mems3", Fraction(0), Fraction(2, 3)),
    ("SL_r4", "mems4", Fraction(1, 4), Fraction(1)),
)

FIGURES = tuple(_DISTORTION_FIGURES) + ("fig5",)


def abs_y_grid(points: int = None) -> List[float]:
    """Uniform |y| in [0, 1/2]."""
    points = points or Config.figure_points
    return [0.5 * i / (points - 1) for i in range(points)]


def p1_grid(points: int = None, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> List[float]:
    """Uniform p1 in [lo, hi], each point rounded once from its exact value."""
    points = points or Config.figure_points
    return [float(lo + (hi - lo) * i / (points - 1)) for i in range(points)]


def distortion_rows(p1: float, series: Sequence[str], abs_ys: Sequence[float]) -> List[Row]:
    return [(p1, y, name, _DISTORTIONS[name](p1, y)) for y in abs_ys for name in series]


def entropy_rows(points: int = None) -> List[Row]:
    """S_L per family over that family's p1 range, series by series."""
    rows = []
    for name, family, lo, hi in _ENTROPY_SERIES:
        for p1 in p1_grid(points, lo, hi):
            rows.append((p1, None, name, metrics.linear_entropy_closed_form(family, p1)))
    return rows


def figure_rows(name: str, points: int = None) -> List[Row]:
    if name in _DISTORTION_FIGURES:
        p1, series = _DISTORTION_FIGURES[name]
        return distortion_rows(p1, series, abs_y_grid(points))
    elif name == "fig5":
        return entropy_rows(points)
    raise ValueError(f"Unknown figure: {name}. Supported: {', '.join(FIGURES)}")


def figure_csv(name: str, points: int = None) -> str:
    return csv_text(HEADER, figure_rows(name, points))


def write_figures(outdir: str, points: int = None) -> List[str]:
    """Writes fig1.csv ... fig5.csv into `outdir` and returns their paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for name in FIGURES:
        paths.append(write_csv(os.path.join(outdir, f"{name}.csv"), HEADER, figure_rows(name, points)))
    return paths


# Landmarks

def series_values(rows: Sequence[Row], series: str) -> List[Tuple[float, Optional[float], float]]:
    return [(p, y, v) for p, y, s, v in rows if s == series]


def value_at(rows: Sequence[Row], series: str, param: float = None, abs_y: float = None) -> float:
    for p, y, s, v in rows:
        if s == series and (param is None or p == param) and (abs_y is None or y == abs_y):
            return v
    raise KeyError(f"No row for series {series} at param={param}, abs_y={abs_y}")


def crossing_bracket(rows: Sequence[Row], first: str, second: str) -> Optional[Tuple[float, float]]:
    """Consecutive |y| values between which first - second changes sign."""
    a = {y: v for _, y, v in series_values(rows, first)}
    b = {y: v for _, y, v in series_values(rows, second)}
    ys = sorted(set(a) & set(b))
    for lo, hi in zip(ys, ys[1:]):
        if (a[lo] - b[lo]) * (a[hi] - b[hi]) <= 0 and a[lo] != b[lo]:
            return lo, hi
    return None


def ordering_holds(rows: Sequence[Row], order: Sequence[str], skip_zero: bool = True) -> bool:
    """order[0] < order[1] < ... at every |y| (|y| = 0 skipped by default)."""
    by_y: Dict[float, Dict[str, float]] = {}
    for _, y, s, v in rows:
        by_y.setdefault(y, {})[s] = v
    for y, values in by_y.items():
        if skip_zero and y == 0:
            continue
        chain = [values[s] for s in order]
        if any(lo >= hi for lo, hi in zip(chain, chain[1:])):
            return False
    return True
