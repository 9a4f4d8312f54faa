import csv
import dataclasses
import io
import json
import math
from enum import Enum
from typing import Any, Iterable, Sequence

import numpy as np

from .density import DensityMatrix


class ReportSerializer:
    """
    Serializer for run, sweep and verification reports.

    Format Logic:
    1. Dataclasses and dicts become JSON objects (dataclass fields in
       declaration order); a DensityMatrix becomes {dims, matrix}.
    2. Complex numbers become [re, im]; matrices become nested lists of
       [re, im] pairs, row-major.
    3. JSON floats use the shortest repr that round-trips; non-finite floats
       become the strings "inf", "-inf" and "nan" so the output stays valid
       JSON. The 17-significant-digit rule applies to CSV only (format_float).
    """

    def __init__(self, indent: int = 2):
        self.indent = indent

    def dumps(self, data: Any) -> str:
        return json.dumps(self._serialize(data), indent=self.indent)

    def _serialize(self, data: Any) -> Any:
        if isinstance(data, Enum):
            return data.value
        if isinstance(data, DensityMatrix):
            return {"dims": list(data.dims), "matrix": self._serialize_array(data.mat)}
        if dataclasses.is_dataclass(data) and not isinstance(data, type):
            return self._serialize_dataclass(data)
        if isinstance(data, dict):
            return {str(k): self._serialize(v) for k, v in data.items()}
        if isinstance(data, np.ndarray):
            return self._serialize_array(data)
        if isinstance(data, (list, tuple)):
            return [self._serialize(item) for item in data]
        return self._serialize_primitive(data)

    def _serialize_dataclass(self, data: Any) -> dict:
        out = {}
        for f in dataclasses.fields(data):
            out[f.name] = self._serialize(getattr(data, f.name))
        return out

    def _serialize_array(self, data: np.ndarray) -> Any:
        if data.ndim == 0:
            return self._serialize_primitive(data.item())
        return [self._serialize_array(row) for row in data]

    def _serialize_primitive(self, data: Any) -> Any:
        if data is None or isinstance(data, (bool, str)):
            return data
        if isinstance(data, np.bool_):
            return bool(data)
        if isinstance(data, (int, np.integer)):
            return int(data)
        if isinstance(data, (complex, np.complexfloating)):
            return [self._serialize_primitive(float(data.real)), self._serialize_primitive(float(data.imag))]
        if isinstance(data, (float, np.floating)):
            v = float(data)
            if math.isnan(v):
                return "nan"
            if math.isinf(v):
                return "inf" if v > 0 else "-inf"
            return float(format_float(v))
        return str(data)


def format_float(value: float) -> str:
    """17 significant digits, '.' decimal separator."""
    return format(float(value), ".17g")


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    text = csv_text(header, rows)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    return path


def dumps(data: Any) -> str:
    """Module level helper function."""
    serializer = ReportSerializer()
    return serializer.dumps(data)
