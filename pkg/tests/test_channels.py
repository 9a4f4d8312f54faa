import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mixport import ChannelSpec, set_warnings
from mixport import channels, density
from mixport.exceptions import ChannelRangeWarning, ChannelSpecError, InvalidParamsError, OutOfRangeError


def test_meps_matrix():
    m = channels.build(ChannelSpec.meps()).mat
    assert m[0, 0] == 0.5 and m[3, 3] == 0.5
    assert m[0, 3] == -0.5 and m[3, 0] == -0.5
    assert_allclose(m[1:3, 1:3], np.zeros((2, 2)))


def test_mems_rank4_entries():
    m = channels.build(ChannelSpec.mems_rank4(0.7)).mat
    assert_allclose(np.diag(m).real, [0.4, 0.1, 0.1, 0.4], atol=1e-15)
    assert m[0, 3].real == pytest.approx(-0.3)


def test_werner_endpoints():
    assert_allclose(channels.build(ChannelSpec.werner(1.0)).mat, channels.build(ChannelSpec.meps()).mat)
    assert_allclose(channels.build(ChannelSpec.werner(0.0)).mat, np.eye(4) / 4)


@pytest.mark.parametrize("spec, rank", [
    (ChannelSpec.meps(), 1),
    (ChannelSpec.mems_rank2(0.75), 2),
    (ChannelSpec.mems_rank3(0.4), 3),
    (ChannelSpec.mems_rank4(0.7), 4),
    (ChannelSpec.werner(0.5), 4),
])
def test_rank_matches_case(spec, rank):
    assert density.rank(channels.build(spec)) == rank
    assert channels.expected_rank(spec) == rank


def test_parse_and_text_form():
    assert channels.parse("meps") == ChannelSpec.meps()
    assert channels.parse("mems4:p1=0.7") == ChannelSpec.mems_rank4(0.7)
    assert channels.parse(" Werner : r = 0.5 ") == ChannelSpec.werner(0.5)
    spec = channels.parse("xz:a=0.3,b=0.2,c=0.1+0.05i,d=0.2,e=-0.2i")
    assert spec.param_map["c"] == 0.1 + 0.05j
    assert spec.param_map["e"] == -0.2j
    assert channels.parse(spec.to_text()) == spec
    assert ChannelSpec.mems_rank4(0.7).to_text() == "mems4:p1=0.7"
    assert str(ChannelSpec.mems_general(0.5, 0.25, 0.15, 0.1)) == "mems:p1=0.5,p2=0.25,p3=0.15,p4=0.1"


@pytest.mark.parametrize("text", ["foo", "mems2:p1", "mems2:q=1", "mems2:p1=abc", "mems2:p1=0.6,p1=0.7", "werner"])
def test_parse_errors(text):
    with pytest.raises(ChannelSpecError):
        channels.parse(text)


def test_spec_validation():
    with pytest.raises(InvalidParamsError):
        ChannelSpec("mems2", ())
    with pytest.raises(InvalidParamsError):
        ChannelSpec("ghz", ())
    with pytest.raises(InvalidParamsError, match="real"):
        ChannelSpec("mems2", (0.5 + 0.1j,))


def test_general_families_validation():
    with pytest.raises(InvalidParamsError, match="p1 >= p2"):
        channels.build(ChannelSpec.mems_general(0.1, 0.2, 0.3, 0.4))
    with pytest.raises(InvalidParamsError, match="sum to 1"):
        channels.build(ChannelSpec.mems_general(0.5, 0.3, 0.1, 0.0))
    with pytest.raises(InvalidParamsError, match=r"\|e\|\^2"):
        channels.build(ChannelSpec.general_xz(0.1, 0.1, 0.0, 0.1, 0.5))
    with pytest.raises(InvalidParamsError, match=r"\|c\|\^2"):
        channels.build(ChannelSpec.general_xz(0.3, 0.1, 0.5, 0.1, 0.0))
    with pytest.raises(InvalidParamsError):
        channels.build(ChannelSpec.werner(1.5))


def test_out_of_order_weights_warn():
    with pytest.warns(ChannelRangeWarning, match="ordered range"):
        rho = channels.build(ChannelSpec.mems_rank2(0.3))
    assert rho.dims == (2, 2)
    assert not ChannelSpec.mems_rank2(0.3).in_validity_range
    assert ChannelSpec.mems_rank2(0.6).in_validity_range


def test_rank3_above_half_is_not_a_state():
    with pytest.warns(ChannelRangeWarning):
        m = channels.channel_matrix(ChannelSpec.mems_rank3(0.7))
    assert np.linalg.eigvalsh(m).min() == pytest.approx(1 - 2 * 0.7)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ChannelRangeWarning)
        with pytest.raises(InvalidParamsError, match="positive semi-definite"):
            channels.build(ChannelSpec.mems_rank3(0.7))


def test_warnings_can_be_disabled():
    set_warnings(False)
    try:
        with warnings.catch_warnings(record=True) as record:
            warnings.simplefilter("always")
            channels.build(ChannelSpec.mems_rank4(0.1))
        assert not [w for w in record if issubclass(w.category, ChannelRangeWarning)]
    finally:
        set_warnings(True)


def test_werner_mems_map():
    assert channels.werner_to_mems_p1(1.0) == 1.0
    assert channels.werner_to_mems_p1(0.0) == 0.25
    for r in (0.0, 0.1, 1 / 3, 0.75, 1.0):
        assert abs(channels.mems_p1_to_werner(channels.werner_to_mems_p1(r)) - r) <= 1e-15
    with pytest.raises(OutOfRangeError):
        channels.werner_to_mems_p1(1.2)
    with pytest.raises(OutOfRangeError):
        channels.mems_p1_to_werner(0.2)


def test_werner_equals_mems4_at_mapped_p1():
    r = 0.6
    assert_allclose(
        channels.build(ChannelSpec.werner(r)).mat,
        channels.build(ChannelSpec.mems_rank4(channels.werner_to_mems_p1(r))).mat,
        atol=1e-15,
    )


def test_catalog_builds():
    specs = channels.catalog()
    assert len(specs) == len({s.to_text() for s in specs})
    with warnings.catch_warnings(record=True) as record:
        warnings.simplefilter("always")
        states = [channels.build(s) for s in specs]
    assert not record
    assert all(s.dims == (2, 2) for s in states)
    assert {s.family for s in specs} == set(channels.FAMILIES)


def test_is_symmetric_family():
    symmetric = [ChannelSpec.meps(), ChannelSpec.mems_rank4(0.7), ChannelSpec.werner(0.5)]
    for spec in symmetric:
        assert channels.is_symmetric_family(spec)
        rho = channels.build(spec)
        assert_allclose(density.partial_trace(rho, "A").mat, np.eye(2) / 2, atol=1e-12)
        assert_allclose(density.partial_trace(rho, "B").mat, np.eye(2) / 2, atol=1e-12)
    for spec in [ChannelSpec.mems_rank2(0.7), ChannelSpec.mems_rank3(0.4),
                 ChannelSpec.general_xz(0.4, 0.1, 0.0, 0.1, 0.35)]:
        assert not channels.is_symmetric_family(spec)
