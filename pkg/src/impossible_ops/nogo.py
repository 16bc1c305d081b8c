"""Both impossibility arguments against the general impossible operation.

Factor ordering throughout: Alice is factor 0, Bob's qubit factor 1, the
ancilla factor 2.

No-signalling: Bob runs the machine on his half of a singlet.  If Alice's
choice of measurement basis leaves Bob with different mixtures, the machine
signals.

Entanglement: Alice and Bob share (|0>|psi1> + |1>|psi2>)/sqrt(2).  Bob's
local operation replaces the largest eigenvalue of Alice's marginal,
1/2 + |alpha|/2, by 1/2 + |alpha beta|/2; with beta = alpha this is smaller
whenever 0 < |alpha| < 1, i.e. entanglement goes up.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .machine import GramSpec, Machine, MachineError, apply_postulate, realize_from_gram
from .qcore import (
    DensityMatrix,
    QuantumError,
    QubitBasis,
    StateVector,
    binary_entropy,
    eigvals_hermitian,
    entanglement_entropy,
    ket,
    partial_trace,
    tensor,
    tensor_all,
    trace_distance,
)

VERDICT_TOL = 1e-9
CLOSED_FORM_TOL = 1e-9
AMPLITUDE_NORM_TOL = 1e-10
SINGLET_TOL = 1e-12


class AliceBasis(enum.Enum):
    COMPUTATIONAL = "computational"
    ROTATED = "rotated"


class Stage(enum.Enum):
    BEFORE = "before"
    AFTER = "after"


class SignallingVerdict(enum.Enum):
    SIGNALLING = "SIGNALLING"
    NO_SIGNALLING = "NO_SIGNALLING"


class MonotoneVerdict(enum.Enum):
    MONOTONE_VIOLATED = "MONOTONE_VIOLATED"
    MONOTONE_RESPECTED = "MONOTONE_RESPECTED"


class DegenerateBoundError(ValueError):
    """cos(theta) bound is undefined because one of a, b, c, d is zero."""


class ConsistencyError(RuntimeError):
    """Numerically computed quantity disagrees with its closed form."""


# -- no-signalling ----------------------------------------------------------

def build_singlet() -> StateVector:
    """(|01> - |10>)/sqrt(2) on dims (2, 2)."""
    s = 1.0 / math.sqrt(2.0)
    return StateVector([0.0, s, -s, 0.0], (2, 2))


def singlet_in_basis(basis: QubitBasis) -> StateVector:
    """(|psi>|psibar> - |psibar>|psi>)/sqrt(2) for the given basis."""
    a = tensor(basis.psi, basis.psibar).amplitudes
    b = tensor(basis.psibar, basis.psi).amplitudes
    return StateVector((a - b) / math.sqrt(2.0), (2, 2))


def singlet_basis_error(basis: QubitBasis) -> float:
    """Max amplitude difference between the singlet and its re-expansion."""
    return float(np.abs(build_singlet().amplitudes - singlet_in_basis(basis).amplitudes).max())


def post_machine_singlet(m: Machine, alice_basis: AliceBasis = AliceBasis.COMPUTATIONAL) -> StateVector:
    """Singlet with Bob's qubit run through the postulated machine.

    COMPUTATIONAL gives (|0>|1>|F(1)> - |1>|0>|F(0)>)/sqrt(2); ROTATED the
    same expression written in the psi/psibar basis.  For a machine that is
    not linear the two disagree, which is the point.
    """
    if alice_basis is AliceBasis.COMPUTATIONAL:
        first, second = ("0", "1"), ("1", "0")
    else:
        first, second = ("psi", "psibar"), ("psibar", "psi")
    a1, b1 = (m.input_ket(x) for x in first)
    a2, b2 = (m.input_ket(x) for x in second)
    plus = tensor(a1, apply_postulate(m, first[1], b1)).amplitudes
    minus = tensor(a2, apply_postulate(m, second[1], b2)).amplitudes
    return StateVector((plus - minus) / math.sqrt(2.0), (2, 2, m.ancilla_dim))


def bob_mixture(m: Machine, alice_basis: AliceBasis) -> DensityMatrix:
    """Bob's (qubit, ancilla) state after Alice measures in ``alice_basis``.

    Equal-weight mixture of |j><j| (x) |F(j)><F(j)| over the two kets of
    the basis.
    """
    labels = ("1", "0") if alice_basis is AliceBasis.COMPUTATIONAL else ("psibar", "psi")
    d = m.ancilla_dim
    rho = np.zeros((2 * d, 2 * d), dtype=complex)
    for label in labels:
        v = tensor(m.input_ket(label), m.image(label)).amplitudes
        rho += 0.5 * np.outer(v, v.conj())
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho, (2, d))


@dataclass(frozen=True)
class SignallingReport:
    rho_b_computational: DensityMatrix
    rho_b_rotated: DensityMatrix
    distance: float
    verdict: SignallingVerdict


def signalling_test(m: Machine) -> SignallingReport:
    if not m.is_complete():
        missing = [lbl for lbl in ("0", "1", "psi", "psibar") if lbl not in m.images]
        raise MachineError(f"machine has no image for {missing}")
    comp = bob_mixture(m, AliceBasis.COMPUTATIONAL)
    rot = bob_mixture(m, AliceBasis.ROTATED)
    dist = trace_distance(comp, rot)
    verdict = SignallingVerdict.SIGNALLING if dist > VERDICT_TOL else SignallingVerdict.NO_SIGNALLING
    return SignallingReport(comp, rot, dist, verdict)


# -- entanglement -------------------------------------------------------------

def build_shared_state(g: GramSpec, blank: StateVector | None = None) -> StateVector:
    """(|0>|psi1> + |1>|psi2>)/sqrt(2) (x) |blank>, dims (2, 2, ancilla)."""
    psi1, psi2, _, _ = realize_from_gram(g)
    blank = ket(0) if blank is None else blank
    ab = (tensor(ket(0), psi1).amplitudes + tensor(ket(1), psi2).amplitudes) / math.sqrt(2.0)
    return tensor(StateVector(ab, (2, 2)), blank)


def apply_general_operation(psi: StateVector, g: GramSpec, blank: StateVector | None = None) -> StateVector:
    """(|0>|psi1>|F(psi1)> + |1>|psi2>|F(psi2)>)/sqrt(2).

    ``psi`` must be the state ``build_shared_state(g)`` produced; anything
    else means the machine would be fed an input it has no image for.
    """
    expected = build_shared_state(g, blank)
    if psi.dims != expected.dims or np.abs(psi.amplitudes - expected.amplitudes).max() > AMPLITUDE_NORM_TOL:
        raise MachineError("input state was not built from this GramSpec")
    psi1, psi2, f1, f2 = realize_from_gram(g)
    if f1.dim != psi.dims[2]:
        raise MachineError("ancilla dimension does not match the realized images")
    out = (tensor_all(ket(0), psi1, f1).amplitudes + tensor_all(ket(1), psi2, f2).amplitudes) / math.sqrt(2.0)
    return StateVector(out, psi.dims)


def alice_reduced(psi: StateVector, stage: Stage, g: GramSpec | None = None) -> DensityMatrix:
    """Alice's marginal of the shared state before or after the operation.

    With ``g`` given, the <0|rho|1> entry is checked against
    1/2 <psi2|psi1> (BEFORE) or 1/2 <psi2|psi1><F(psi2)|F(psi1)> (AFTER).
    """
    rho = partial_trace(psi, [0])
    if g is not None:
        expected = 0.5 * np.conj(g.alpha)
        if stage is Stage.AFTER:
            expected *= np.conj(g.beta)
        if abs(rho.entries[0, 1] - expected) > CLOSED_FORM_TOL:
            raise ConsistencyError(
                f"{stage.value} off-diagonal {rho.entries[0, 1]} != expected {expected}")
    return rho


def _check_pair(x: float, y: float, name: str) -> None:
    if x < 0 or y < 0:
        raise QuantumError(f"{name} amplitudes must be non-negative")
    if abs(x * x + y * y - 1.0) > AMPLITUDE_NORM_TOL:
        raise QuantumError(f"{name} amplitudes not normalized: {x}^2 + {y}^2 = {x * x + y * y}")


def alpha_from_params(a: float, b: float, c: float, d: float, theta: float) -> complex:
    """<psi1|psi2> for psi1 = a|0> + b|1>, psi2 = c|0> + d e^{i theta}|1>.

    Rounding can push |alpha| a hair above 1 on the boundary; it is clipped.
    """
    _check_pair(a, b, "psi1")
    _check_pair(c, d, "psi2")
    x = a * c + b * d * math.cos(theta)
    y = b * d * math.sin(theta)
    alpha = complex(x, y)
    r = abs(alpha)
    if r > 1.0:
        alpha /= r
    return alpha


def paper_pair(a: float, b: float, c: float, d: float, theta: float) -> tuple[StateVector, StateVector]:
    """The literal (psi1, psi2) of the a, b, c, d, theta parameterization."""
    _check_pair(a, b, "psi1")
    _check_pair(c, d, "psi2")
    return (StateVector.from_amplitudes([a, b], normalize=True),
            StateVector.from_amplitudes([c, d * np.exp(1j * theta)], normalize=True))


def closed_form_lambdas(a: float, b: float, c: float, d: float, theta: float) -> tuple[float, float]:
    """(1/2 + |alpha|/2, 1/2 + |alpha|^2/2) with beta = alpha."""
    r = abs(alpha_from_params(a, b, c, d, theta))
    return 0.5 + 0.5 * r, 0.5 + 0.5 * r * r


def cos_theta_bound(a: float, b: float, c: float, d: float) -> float:
    """(1 - (a^2 c^2 + b^2 d^2)) / (2abcd).

    With a^2 + b^2 = c^2 + d^2 = 1 the numerator equals a^2 d^2 + b^2 c^2;
    that form is used because it does not cancel catastrophically, and it
    makes bound - 1 = (ad - bc)^2 / (2abcd) >= 0 visible.
    """
    if min(a, b, c, d) <= 0.0:
        raise DegenerateBoundError(f"bound undefined for a={a}, b={b}, c={c}, d={d}")
    _check_pair(a, b, "psi1")
    _check_pair(c, d, "psi2")
    denom = 2.0 * a * b * c * d
    val = (a * a * d * d + b * b * c * c) / denom if denom > 0.0 else math.inf
    if not math.isfinite(val):
        raise DegenerateBoundError(f"bound not representable for a={a}, b={b}, c={c}, d={d}")
    return val


@dataclass(frozen=True)
class EntanglementReport:
    a: float
    b: float
    c: float
    d: float
    theta: float
    alpha: complex
    beta: complex
    lambda_before: float
    lambda_after: float
    lambda_before_closed: float
    lambda_after_closed: float
    entropy_before: float
    entropy_after: float
    delta_entropy: float
    cos_bound: float | None
    verdict: MonotoneVerdict

    @property
    def lambda_gap(self) -> float:
        return self.lambda_before - self.lambda_after


def monotonicity_test(a: float, b: float, c: float, d: float, theta: float,
                      beta_override: complex | None = None) -> EntanglementReport:
    """Run the entanglement argument for one parameter point.

    Raises ConsistencyError if the numerically obtained largest eigenvalues
    disagree with 1/2 + |alpha|/2 and 1/2 + |alpha beta|/2 by more than 1e-9.
    """
    alpha = alpha_from_params(a, b, c, d, theta)
    g = GramSpec(alpha, beta_override)

    before = build_shared_state(g)
    after = apply_general_operation(before, g)
    rho_before = alice_reduced(before, Stage.BEFORE, g)
    rho_after = alice_reduced(after, Stage.AFTER, g)
    lam_before = float(eigvals_hermitian(rho_before)[0])
    lam_after = float(eigvals_hermitian(rho_after)[0])

    lam_before_closed = 0.5 + 0.5 * abs(g.alpha)
    lam_after_closed = 0.5 + 0.5 * abs(g.alpha) * abs(g.beta)
    if (abs(lam_before - lam_before_closed) > CLOSED_FORM_TOL
            or abs(lam_after - lam_after_closed) > CLOSED_FORM_TOL):
        raise ConsistencyError(
            f"eigenvalue mismatch at a={a}, c={c}, theta={theta}: numeric "
            f"({lam_before}, {lam_after}) vs closed ({lam_before_closed}, {lam_after_closed})")

    e_before = entanglement_entropy(before, [0])
    e_after = entanglement_entropy(after, [0])
    try:
        bound = cos_theta_bound(a, b, c, d)
    except DegenerateBoundError:
        bound = None
    verdict = (MonotoneVerdict.MONOTONE_VIOLATED if lam_after < lam_before - VERDICT_TOL
               else MonotoneVerdict.MONOTONE_RESPECTED)
    return EntanglementReport(
        a=a, b=b, c=c, d=d, theta=theta, alpha=g.alpha, beta=g.beta,
        lambda_before=lam_before, lambda_after=lam_after,
        lambda_before_closed=lam_before_closed, lambda_after_closed=lam_after_closed,
        entropy_before=e_before, entropy_after=e_after,
        delta_entropy=e_after - e_before, cos_bound=bound, verdict=verdict,
    )


def entropy_from_lambda(lam: float) -> float:
    """Entanglement entropy of a two-qubit-marginal pure state from lambda_max."""
    return binary_entropy(lam)
