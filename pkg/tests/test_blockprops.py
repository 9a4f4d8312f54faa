import numpy as np
import pytest
from numpy.testing import assert_allclose

from mixport import ChannelSpec, blockprops, channels
from mixport.blockprops import PropertyReport
from mixport.exceptions import NotBipartiteError, WrongShapeError


def _det_counterexample(b: float = 0.5) -> np.ndarray:
    # [[I, bI], [bI, I]] with 2x2 blocks
    eye = np.eye(2)
    return np.block([[eye, b * eye], [b * eye, eye]]).astype(complex)


def test_block_trace_matrix_is_partial_trace():
    rho = channels.build(ChannelSpec.mems_general(0.5, 0.25, 0.15, 0.1))
    assert blockprops.reduced_trace_matches(rho)
    assert_allclose(blockprops.block_trace_matrix(rho), np.diag([0.575, 0.425]), atol=1e-15)
    symmetric = channels.build(ChannelSpec.mems_rank4(0.7))
    assert_allclose(blockprops.block_trace_matrix(symmetric), np.eye(2) * 0.5, atol=1e-15)


def test_block_det_matrix():
    dets = blockprops.block_det_matrix(_det_counterexample(0.5), (2, 2))
    assert_allclose(dets, [[1.0, 0.25], [0.25, 1.0]])


def test_p1_forward_holds_on_psd():
    rng = np.random.default_rng(7)
    report = blockprops.check_p1(blockprops.random_psd(rng, 6), "forward", (2, 3))
    assert report.holds and report.worst_margin >= 0


def test_p1_converse_witness():
    mat, dims = blockprops.p1_converse_witness()
    report = blockprops.check_p1(mat, "converse", dims)
    assert report.violations == 1
    assert report.worst_margin == pytest.approx(-1.0)
    assert_allclose(report.witness, mat)
    assert not report.witness.flags.writeable
    assert not report.asserted


def test_p1_converse_premise_failure_counts_as_holding():
    mat = np.diag([1.0, -0.5, 0.5]).astype(complex)
    report = blockprops.check_p1(mat, "converse", (3, 1))
    assert report.holds and report.worst_margin == float("inf")
    with pytest.raises(ValueError):
        blockprops.check_p1(mat, "sideways", (3, 1))


def test_p2_on_counterexample():
    det_entry, trace_entry = blockprops.check_p2(_det_counterexample(0.5), (2, 2))
    assert det_entry.violations == 1
    assert det_entry.worst_margin == pytest.approx(0.5625 - 0.9375)
    assert trace_entry.holds


def test_p3_on_counterexample():
    trace_chain, det_chain, fischer = blockprops.check_p3(_det_counterexample(0.5), (2, 2))
    assert trace_chain.holds
    assert trace_chain.links["cross<=geometric"] == pytest.approx(2.0 - 0.5)
    assert det_chain.violations == 1
    assert det_chain.links["lower<=det"] == pytest.approx(0.5625 - 0.9375)
    assert fischer.holds
    assert fischer.worst_margin == pytest.approx(1.0 - 0.5625)


def test_p3_needs_two_row_blocks():
    rng = np.random.default_rng(1)
    with pytest.raises(WrongShapeError):
        blockprops.check_p3(blockprops.random_psd(rng, 6), (3, 2))


def test_dims_are_checked():
    with pytest.raises(NotBipartiteError):
        blockprops.check_p1(np.eye(4) / 4)
    with pytest.raises(NotBipartiteError):
        blockprops.check_p2(np.eye(4) / 4, (3, 2))
    with pytest.raises(NotBipartiteError):
        blockprops.check_p2(np.eye(4) / 4, (1, 4))


def test_report_invariants():
    with pytest.raises(ValueError):
        PropertyReport("P1_forward", samples=1, violations=2, worst_margin=-1.0, witness=np.eye(2))
    with pytest.raises(ValueError):
        PropertyReport("P1_forward", samples=1, violations=1, worst_margin=-1.0)
    with pytest.raises(ValueError):
        PropertyReport("P1_forward", samples=1, violations=0, worst_margin=1.0, witness=np.eye(2))


def test_merge_keeps_worst_witness():
    a = blockprops.check_p1(np.array([[1, 2], [2, 1]]), "converse", (2, 1))
    b = blockprops.check_p1(np.array([[1, 3], [3, 1]]), "converse", (2, 1))
    c = blockprops.check_p1(np.eye(2) / 2, "converse", (2, 1))
    merged = blockprops.merge([a, b, c])
    assert merged.samples == 3 and merged.violations == 2
    assert merged.worst_margin == pytest.approx(-2.0)
    assert_allclose(merged.witness, [[1, 3], [3, 1]])
    with pytest.raises(ValueError):
        blockprops.merge([])


@pytest.mark.parametrize("property_id", blockprops.ASSERTED)
@pytest.mark.parametrize("dims", [(2, 2), (2, 3)])
def test_asserted_properties_hold(property_id, dims):
    report = blockprops.run_suite(property_id, samples=200, seed=11, dims=dims)
    assert report.samples == 200
    assert report.violations == 0
    assert report.witness is None


def test_claims_under_test_find_counterexamples():
    report = blockprops.run_suite("P1_converse", samples=200, seed=3)
    assert report.violations > 0
    assert np.linalg.eigvalsh(report.witness).min() < 0


def test_run_suite_is_deterministic_across_workers():
    serial = blockprops.run_suite("P3_det_chain", samples=100, seed=5)
    threaded = blockprops.run_suite("P3_det_chain", samples=100, seed=5, workers=4)
    assert serial.violations == threaded.violations
    assert serial.worst_margin == threaded.worst_margin
    assert serial.links == threaded.links


def test_unknown_property():
    with pytest.raises(ValueError, match="Unknown property"):
        blockprops.run_suite("P4", samples=1, seed=0)
