from typing import List, Tuple, Union

from . import channels, teleport
from .channels import ChannelSpec
from .density import QubitState
from .exceptions import ChannelSpecError, InvalidStateError
from .metrics import DistortionRecord, branch_distortions


def simulate(state_input: Union[QubitState, Tuple[float, complex]],
             channel: Union[ChannelSpec, str]) -> Tuple[teleport.TeleportRun, List[DistortionRecord]]:
    """
    Teleports one input qubit through a channel and measures the distortion.

    Args:
        state_input: A QubitState or an (x, y) pair.
        channel: A ChannelSpec or its text form ('mems4:p1=0.7').

    Returns:
        (TeleportRun, list of DistortionRecord), one record per outcome class.

    Raises:
        InvalidStateError: If the input is not a valid qubit.
        ChannelSpecError: If the channel text cannot be parsed.
        InvalidParamsError: If the channel parameters are invalid.
    """
    if isinstance(state_input, QubitState):
        state = state_input
    elif isinstance(state_input, (tuple, list)) and len(state_input) == 2:
        state = QubitState(*state_input)
    else:
        raise InvalidStateError(f"Expected a QubitState or an (x, y) pair, got {state_input!r}")

    if isinstance(channel, ChannelSpec):
        spec = channel
    elif isinstance(channel, str):
        spec = channels.parse(channel)
    else:
        raise ChannelSpecError(f"Expected a ChannelSpec or channel text, got {type(channel).__name__}")

    run = teleport.run(state, spec)
    return run, branch_distortions(run)


def help():
    """
    Prints a list of the main operations of the mixport library.
    """
    msg = """
mixport Operations:
-------------------
1. Use mixport.simulate((x, y), channel) to teleport a qubit and get the
 distortion of every outcome class. Channels are given as ChannelSpec or text:
 'meps', 'mems2:p1=0.6', 'mems3:p1=0.4', 'mems4:p1=0.7', 'werner:r=0.5',
 'xz:a=..,b=..,c=..,d=..,e=..', 'mems:p1=..,p2=..,p3=..,p4=..'.

2. Building blocks:
   - channels.build(spec), channels.parse(text), channels.catalog()
   - teleport.run(state, spec), teleport.measure(rho1, rho23, outcome)
   - entanglement.concurrence(rho), entanglement.min_pt_eigenvalue(rho),
     entanglement.linear_entropy(rho)
   - metrics.hs_distance_sq(a, b), metrics.closed_form(...), metrics.sweep(...)
   - blockprops.check_p1/check_p2/check_p3(rho), blockprops.run_suite(...)

3. Command line: mixport {teleport,sweep,figures,verify} --help

For more details, see the documentation or inspect docstrings.
    """
    print(msg.strip())
