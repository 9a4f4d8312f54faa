import numpy as np
import pytest

from mixport import ChannelSpec, DensityMatrix, QubitState
from mixport import channels, density, entanglement
from mixport.exceptions import WrongShapeError


@pytest.mark.parametrize("spec, expected", [
    (ChannelSpec.meps(), 1.0),
    (ChannelSpec.mems_rank2(0.75), 0.75),
    (ChannelSpec.mems_rank2(0.5), 0.5),
    (ChannelSpec.mems_rank3(0.4), 0.2),
    (ChannelSpec.mems_rank3(1 / 3), 0.0),
    (ChannelSpec.mems_rank4(0.7), 0.4),
    (ChannelSpec.mems_rank4(0.5), 0.0),
    (ChannelSpec.werner(1 / 3), 0.0),
    (ChannelSpec.werner(0.8), 0.7),
])
def test_concurrence_identities(spec, expected):
    assert abs(entanglement.concurrence(channels.build(spec)) - expected) <= 1e-12


def test_concurrence_of_product_state_is_zero():
    a = density.from_qubit(QubitState(0.3, 0.2))
    b = density.from_qubit(QubitState(0.6, 0.1j))
    assert entanglement.concurrence(density.product_state(a, b)) <= 1e-12


def test_concurrence_needs_two_qubits():
    with pytest.raises(WrongShapeError):
        entanglement.concurrence(DensityMatrix(np.eye(4) / 4))
    with pytest.raises(WrongShapeError):
        entanglement.min_pt_eigenvalue(DensityMatrix(np.eye(2) / 2))


@pytest.mark.parametrize("r", [0.0, 0.2, 1 / 3, 0.5, 1.0])
def test_min_pt_eigenvalue_of_werner(r):
    value = entanglement.min_pt_eigenvalue(channels.build(ChannelSpec.werner(r)))
    assert value == pytest.approx((1 - 3 * r) / 4, abs=1e-14)


def test_peres_horodecki_on_catalog():
    for spec in channels.catalog():
        rho = channels.build(spec)
        c = entanglement.concurrence(rho)
        assert (c > 1e-10) == entanglement.is_entangled(rho), spec.to_text()


def test_linear_entropy():
    assert entanglement.linear_entropy(DensityMatrix(np.eye(4) / 4, (2, 2))) == pytest.approx(1.0)
    assert entanglement.linear_entropy(channels.build(ChannelSpec.meps())) == pytest.approx(0.0, abs=1e-15)
    assert entanglement.linear_entropy(np.eye(2) / 2) == pytest.approx(2 / 3)


def test_measure_dispatch():
    rho = channels.build(ChannelSpec.werner(0.5))
    value = entanglement.measure(rho, "concurrence")
    assert value.measure == "concurrence"
    assert value.value == pytest.approx(0.25)
    assert entanglement.measure(rho, "min_pt_eigenvalue").value == pytest.approx(-0.125)
    with pytest.raises(ValueError, match="Unsupported measure"):
        entanglement.measure(rho, "negativity")
