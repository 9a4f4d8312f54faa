import json
import math

import numpy as np

from mixport import BellOutcome, ChannelSpec, DensityMatrix, QubitState, ReportSerializer, dumps
from mixport.serializer import csv_text, format_float


def test_primitives():
    data = json.loads(dumps({"c": 1 + 2j, "inf": math.inf, "nan": math.nan, "i": np.int64(3), "b": np.bool_(True)}))
    assert data == {"c": [1.0, 2.0], "inf": "inf", "nan": "nan", "i": 3, "b": True}


def test_dataclasses_and_enums():
    data = json.loads(dumps({"outcome": BellOutcome.PSI_MINUS, "spec": ChannelSpec.werner(0.5), "q": QubitState(0.5, 0.1j)}))
    assert data["outcome"] == "PsiMinus"
    assert data["spec"] == {"family": "werner", "params": [0.5]}
    assert data["q"] == {"x": 0.5, "y": [0.0, 0.1]}


def test_density_matrix():
    data = json.loads(dumps(DensityMatrix(np.eye(2) / 2)))
    assert data == {"dims": [2, 1], "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}


def test_indent():
    assert ReportSerializer(indent=None).dumps([1, 2]) == "[1, 2]"


def test_float_format():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(2.0) == "2"


def test_csv_text():
    text = csv_text(["a", "b", "c"], [[0.5, None, True], ["x", BellOutcome.PHI_PLUS, 1]])
    assert text == "a,b,c\n0.5,,true\nx,PhiPlus,1\n"


def test_json_floats_round_trip_csv_floats_use_17_digits():
    assert json.loads(ReportSerializer(indent=None).dumps({"p": 0.1})) == {"p": 0.1}
    assert ReportSerializer(indent=None).dumps([0.1]) == "[0.1]"
    assert csv_text(["p"], [[0.1]]) == "p\n0.10000000000000001\n"
