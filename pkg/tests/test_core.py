import pytest

import mixport
from mixport import ChannelSpec, QubitState, simulate
from mixport.exceptions import ChannelSpecError, InvalidStateError


def test_simulate_with_text_channel():
    run, records = simulate((0.5, 0.3), "meps")
    assert run.channel == ChannelSpec.meps()
    assert [r.outcome_class for r in records] == ["uniform"]
    assert records[0].value < 1e-24


def test_simulate_with_spec():
    run, records = simulate(QubitState(0.3, 0.1), ChannelSpec.mems_rank3(0.4))
    assert len(run.outcomes) == 4
    assert [r.outcome_class for r in records] == ["phi", "psi"]
    assert all(r.value > 0 for r in records)


def test_simulate_errors():
    with pytest.raises(InvalidStateError):
        simulate(0.5, "meps")
    with pytest.raises(InvalidStateError):
        simulate((2.0, 0.0), "meps")
    with pytest.raises(ChannelSpecError):
        simulate((0.5, 0.0), 42)
    with pytest.raises(ChannelSpecError):
        simulate((0.5, 0.0), "mems9:p1=0.5")


def test_help(capsys):
    mixport.help()
    out = capsys.readouterr().out
    assert "mixport.simulate" in out
    assert "teleport" in out


def test_public_names():
    for name in mixport.__all__:
        assert hasattr(mixport, name), name
