import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mixport import BellOutcome, ChannelSpec, QubitState
from mixport import channels, density, teleport
from mixport.exceptions import DegenerateOutcomeError, DegenerateOutcomeWarning, WrongShapeError


def test_bell_projectors_resolve_identity():
    projectors = teleport.bell_projectors()
    assert list(projectors) == list(BellOutcome)
    assert_allclose(sum(projectors.values()), np.eye(4), atol=1e-15)


def test_corrections():
    assert_allclose(teleport.correction(BellOutcome.PHI_PLUS), teleport.SIGMA_Z)
    assert_allclose(teleport.correction(BellOutcome.PHI_MINUS), np.eye(2))
    assert_allclose(teleport.correction("PsiPlus"), teleport.SIGMA_Y)
    assert_allclose(teleport.correction(BellOutcome.PSI_MINUS), teleport.SIGMA_X)
    assert BellOutcome.PHI_MINUS.branch == "phi"
    assert BellOutcome.PSI_PLUS.branch == "psi"


def test_meps_teleports_exactly():
    state = QubitState(0.3, 0.2 + 0.1j)
    run = teleport.run(state, ChannelSpec.meps())
    assert run.total_probability == pytest.approx(1.0)
    for o in run.outcomes:
        assert o.probability == pytest.approx(0.25)
        assert_allclose(o.bob_corrected.mat, state.matrix(), atol=1e-14)


def test_rank4_outcomes_are_uniform():
    run = teleport.run((0.5, 0.3), "mems4:p1=0.7")
    first = run.outcomes[0].bob_corrected
    for o in run.outcomes:
        assert o.probability == pytest.approx(0.25)
        assert o.bob_corrected.allclose(first)
    # off-diagonal shrinks by (4p1 - 1)/3
    assert first.mat[0, 1].real == pytest.approx(0.3 * 0.6)


def test_general_channel_probabilities_sum_to_one():
    run = teleport.run((1.0, 0.0), "xz:a=0.4,b=0.1,c=0,d=0.1,e=0.35")
    assert run.total_probability == pytest.approx(1.0)
    assert run.outcome(BellOutcome.PHI_PLUS).probability == pytest.approx(0.25)


@pytest.mark.parametrize("outcome", list(BellOutcome))
def test_conditional_state_closed_form(outcome):
    spec = ChannelSpec.general_xz(0.3, 0.2, 0.1 + 0.05j, 0.2, -0.2j)
    x, y = 0.4, 0.1 + 0.2j
    rho1 = density.from_qubit(QubitState(x, y))
    probability, bob = teleport.measure(rho1, channels.build(spec), outcome)
    a, b, c, d, e = spec.params
    expected = teleport.conditional_state_closed_form(x, y, a, b, c, d, e, outcome)
    assert_allclose(bob.mat, expected, atol=1e-12)
    assert probability == pytest.approx(teleport.outcome_probability_closed_form(x, a, b, outcome), abs=1e-12)


def test_degenerate_outcome():
    spec = ChannelSpec.general_xz(0.0, 0.0, 0.0, 0.5, 0.0)
    rho1 = density.from_qubit(QubitState(1.0, 0.0))
    with pytest.raises(DegenerateOutcomeError, match="PhiPlus"):
        teleport.measure(rho1, channels.build(spec), BellOutcome.PHI_PLUS)

    with pytest.warns(DegenerateOutcomeWarning):
        run = teleport.run((1.0, 0.0), spec)
    phi = run.outcome(BellOutcome.PHI_PLUS)
    assert phi.degenerate and phi.probability == 0.0 and phi.bob_raw is None
    psi = run.outcome(BellOutcome.PSI_MINUS)
    assert not psi.degenerate
    assert run.total_probability == pytest.approx(1.0)


def test_measure_checks_shapes():
    rho23 = channels.build(ChannelSpec.meps())
    with pytest.raises(WrongShapeError):
        teleport.measure(rho23, rho23, BellOutcome.PHI_PLUS)


def test_run_rejects_unknown_outcome_label():
    run = teleport.run((0.5, 0.0), ChannelSpec.meps())
    with pytest.raises(KeyError):
        run.outcome("Bell5")


def test_run_outcome_order_and_no_warnings():
    with warnings.catch_warnings(record=True) as record:
        warnings.simplefilter("always")
        run = teleport.run((0.5, 0.1j), ChannelSpec.werner(0.5))
    assert not record
    assert [o.outcome for o in run.outcomes] == list(BellOutcome)
