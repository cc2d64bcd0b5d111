"""Spin-momentum states of a massive spin-1/2 particle and their boosts.

The particle is restricted to two sharp momentum branches p+ and p-
(opposite directions along the spin-quantization axis), so the state
space is a two-qubit system momentum (x) spin.  Amplitudes are always
ordered

    (p+ up, p+ down, p- up, p- down).

A boost of the observer acts on the spin conditioned on the momentum
branch: the rotation U(+) on the p+ amplitudes and U(-) on the p-
amplitudes, both about the +y axis by the Thomas-Wigner angle delta.
Global phases are preserved throughout, never normalized away.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "AMPLITUDE_ORDER",
    "Frame",
    "HelicityClass",
    "SpinMomentumState",
    "boost_state",
    "controlled_u_psi_to_xi",
    "local_unitary_psi_to_psitilde",
    "prepare_state",
    "state_from_json_dict",
    "wigner_rotation_matrix",
]

AMPLITUDE_ORDER = ("p+ up", "p+ down", "p- up", "p- down")

_NORM_TOL = 1e-12


class HelicityClass(Enum):
    """Rest-frame preparation family, distinguished by helicity content."""

    EQUAL_PLUS = "psi"        # cos(eta)|p+ up> + sin(eta)|p- down>, helicity +1
    EQUAL_MINUS = "psitilde"  # cos(eta)|p+ down> + sin(eta)|p- up>, helicity -1
    UNEQUAL = "xi"            # (cos(eta)|p+> + sin(eta)|p->) (x) |up>


class Frame(Enum):
    REST = "rest"
    BOOSTED = "boosted"


@dataclass(frozen=True)
class SpinMomentumState:
    """Unit-norm 4-amplitude state with frame and preparation metadata.

    ``helicity_class``/``eta`` record how the state was prepared and
    ``delta`` the rotation angle applied to it, when known; they are
    None for states that did not come out of :func:`prepare_state` /
    :func:`boost_state`.
    """

    amplitudes: np.ndarray
    frame: Frame = Frame.REST
    helicity_class: HelicityClass | None = None
    eta: float | None = None
    delta: float | None = None

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).reshape(4)
        norm_sq = float(np.sum(np.abs(amp) ** 2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise ValueError(f"state must be normalized, got |amplitudes|^2 = {norm_sq}")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    def to_json_dict(self) -> dict:
        """JSON form: {class, eta, delta, frame, amplitudes: [[re, im] x 4]}."""
        return {
            "class": self.helicity_class.value if self.helicity_class else None,
            "eta": self.eta,
            "delta": self.delta,
            "frame": self.frame.value,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }


def state_from_json_dict(payload: dict) -> SpinMomentumState:
    """Inverse of :meth:`SpinMomentumState.to_json_dict`."""
    amps = np.array([complex(re, im) for re, im in payload["amplitudes"]])
    cls = payload.get("class")
    return SpinMomentumState(
        amplitudes=amps,
        frame=Frame(payload["frame"]),
        helicity_class=HelicityClass(cls) if cls is not None else None,
        eta=payload.get("eta"),
        delta=payload.get("delta"),
    )


def prepare_state(helicity_class: HelicityClass, eta: float) -> SpinMomentumState:
    """Rest-frame state of the given preparation family.

    eta in [0, 2 pi) sets the momentum-branch weights cos(eta)/sin(eta).
    The equal-helicity families are entangled for eta not a multiple of
    pi/2 (maximally, a Bell state, at odd multiples of pi/4); the
    unequal-helicity family is a product state for every eta.
    """
    if not 0.0 <= eta < 2.0 * np.pi:
        raise ValueError(f"eta must lie in [0, 2*pi), got {eta}")
    c, s = np.cos(eta), np.sin(eta)
    if helicity_class is HelicityClass.EQUAL_PLUS:
        amps = [c, 0.0, 0.0, s]
    elif helicity_class is HelicityClass.EQUAL_MINUS:
        amps = [0.0, c, s, 0.0]
    elif helicity_class is HelicityClass.UNEQUAL:
        amps = [c, 0.0, s, 0.0]
    else:
        raise ValueError(f"unknown helicity class: {helicity_class!r}")
    return SpinMomentumState(
        amplitudes=np.asarray(amps, dtype=complex),
        frame=Frame.REST,
        helicity_class=helicity_class,
        eta=float(eta),
    )


def wigner_rotation_matrix(delta: float, sign: int) -> np.ndarray:
    """Spin rotation U(+-) about +y by delta, for momentum branch p+ (sign=+1) or p- (sign=-1).

        U(+-) = [[cos(delta/2), +- sin(delta/2)],
                 [-+ sin(delta/2), cos(delta/2)]]

    Real, unitary, determinant 1; U(-delta) = U(+)^T = U(-).
    """
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 (p+ branch) or -1 (p- branch), got {sign}")
    if not 0.0 <= delta <= np.pi:
        raise ValueError(f"delta must lie in [0, pi], got {delta}")
    c, s = np.cos(delta / 2.0), np.sin(delta / 2.0)
    return np.array([[c, sign * s], [-sign * s, c]])


def boost_state(state: SpinMomentumState, delta: float) -> SpinMomentumState:
    """Apply the momentum-conditioned spin rotation of a boost.

    U(+) acts on the amplitudes attached to p+, U(-) on those attached
    to p-; the momentum labels become the transformed p'+-.  Only a
    single boost is modeled, so the input must be a rest-frame state.
    """
    if state.frame is not Frame.REST:
        raise ValueError("state is already boosted; only a single boost is modeled")
    if not 0.0 <= delta <= np.pi:
        raise ValueError(f"delta must lie in [0, pi], got {delta}")
    out = np.empty(4, dtype=complex)
    out[:2] = wigner_rotation_matrix(delta, +1) @ state.amplitudes[:2]
    out[2:] = wigner_rotation_matrix(delta, -1) @ state.amplitudes[2:]
    return SpinMomentumState(
        amplitudes=out,
        frame=Frame.BOOSTED,
        helicity_class=state.helicity_class,
        eta=state.eta,
        delta=float(delta),
    )


# -i sigma_z (x) sigma_y in the fixed amplitude ordering: momentum-local
# sigma_z times spin-local sigma_y with an overall phase -i.  Real matrix.
_PSI_TO_PSITILDE = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

# Controlled-U on the spin with U = i sigma_y = [[0, 1], [-1, 0]],
# conditioned on momentum branch p-; the p+ block is untouched.
_CONTROLLED_ISY = np.array([[0.0, 1.0], [-1.0, 0.0]])

_SWAP_EQUAL = {
    HelicityClass.EQUAL_PLUS: HelicityClass.EQUAL_MINUS,
    HelicityClass.EQUAL_MINUS: HelicityClass.EQUAL_PLUS,
}


def local_unitary_psi_to_psitilde(state: SpinMomentumState) -> SpinMomentumState:
    """Apply the local unitary -i sigma_z (x) sigma_y.

    Maps the boosted equal-helicity state of one family onto the other
    family's boosted state at the same (eta, delta), exactly (the
    conventions here make the identity phase-exact).  Being local to the
    momentum/spin split, it cannot change the entanglement.  Applying it
    twice gives the identity up to a global phase of -1.
    """
    return SpinMomentumState(
        amplitudes=_PSI_TO_PSITILDE @ state.amplitudes,
        frame=state.frame,
        helicity_class=_SWAP_EQUAL.get(state.helicity_class),
        eta=state.eta,
        delta=state.delta,
    )


def controlled_u_psi_to_xi(state: SpinMomentumState) -> SpinMomentumState:
    """Apply controlled-(i sigma_y): the spin flip-with-phase on branch p- only.

    A CNOT with an extra phase, controlled on the momentum.  Maps the
    boosted equal-helicity (+1) state onto the boosted unequal-helicity
    state at the same (eta, delta), exactly; amplitudes on the control
    branch p+ are unchanged.
    """
    out = np.array(state.amplitudes)
    out[2:] = _CONTROLLED_ISY @ out[2:]
    new_class = (
        HelicityClass.UNEQUAL
        if state.helicity_class is HelicityClass.EQUAL_PLUS
        else None
    )
    return SpinMomentumState(
        amplitudes=out,
        frame=state.frame,
        helicity_class=new_class,
        eta=state.eta,
        delta=state.delta,
    )
