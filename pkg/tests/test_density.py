import numpy as np
import pytest
from numpy.testing import assert_allclose

from mixport import DensityMatrix, QubitState, density
from mixport.channels import ChannelSpec, build
from mixport.exceptions import InvalidStateError, NotBipartiteError


def test_valid_density_matrix():
    rho = DensityMatrix(np.eye(4) / 4, (2, 2))
    assert rho.dim == 4
    assert rho.is_bipartite
    assert_allclose(rho.eigenvalues(), [0.25] * 4)


def test_density_matrix_is_read_only():
    rho = DensityMatrix(np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1


def test_invalid_density_matrices():
    with pytest.raises(InvalidStateError, match="Trace"):
        DensityMatrix(np.eye(2))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(InvalidStateError, match="positive"):
        DensityMatrix(np.array([[1.5, 0], [0, -0.5]]))
    with pytest.raises(NotBipartiteError):
        DensityMatrix(np.eye(4) / 4, (3, 2))


def test_qubit_state_validation():
    q = QubitState(0.3, 0.2 + 0.1j)
    assert q.abs_y == pytest.approx(abs(0.2 + 0.1j))
    with pytest.raises(InvalidStateError):
        QubitState(1.2, 0)
    with pytest.raises(InvalidStateError):
        QubitState(0.5, 0.6)
    with pytest.raises(InvalidStateError):
        QubitState(float("nan"), 0)


def test_qubit_from_polar():
    q = QubitState.from_polar(0.5, 0.3, np.pi / 2)
    assert q.y == pytest.approx(0.3j)
    rho = density.from_qubit(q)
    assert rho.dims == (2, 1)
    assert rho.mat[0, 1] == pytest.approx(0.3j)


def test_partial_trace_of_meps():
    rho = build(ChannelSpec.meps())
    assert_allclose(density.partial_trace(rho, "A").mat, np.eye(2) / 2, atol=1e-15)
    assert_allclose(density.partial_trace(rho, "B").mat, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_of_product_state():
    a = density.from_qubit(QubitState(0.3, 0.1))
    b = density.from_qubit(QubitState(0.8, -0.2j))
    ab = density.product_state(a, b)
    assert_allclose(density.partial_trace(ab, "A").mat, a.mat, atol=1e-15)
    assert_allclose(density.partial_trace(ab, "B").mat, b.mat, atol=1e-15)


def test_partial_trace_needs_bipartite():
    with pytest.raises(NotBipartiteError):
        density.partial_trace(DensityMatrix(np.eye(4) / 4))
    with pytest.raises(ValueError):
        density.reduce_matrix(np.eye(4) / 4, (2, 2), keep="C")


def test_partial_transpose_of_meps():
    pt = density.partial_transpose(build(ChannelSpec.meps()))
    eigs = np.linalg.eigvalsh(pt)
    assert_allclose(sorted(eigs), [-0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_partial_transpose_moves_off_diagonal_blocks():
    m = np.arange(16, dtype=float).reshape(4, 4)
    t = density.transpose_blocks(m, (2, 2), on="B")
    assert_allclose(t[0:2, 2:4], m[0:2, 2:4].T)
    t = density.transpose_blocks(m, (2, 2), on="A")
    assert_allclose(t[0:2, 2:4], m[2:4, 0:2])


def test_purity_and_rank():
    assert density.purity(build(ChannelSpec.meps())) == pytest.approx(1.0)
    assert density.purity(np.eye(4) / 4) == pytest.approx(0.25)
    assert density.rank(build(ChannelSpec.meps())) == 1
    assert density.rank(build(ChannelSpec.werner(0.5))) == 4
