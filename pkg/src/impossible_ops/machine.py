"""The hypothetical |i>|blank> -> |i>|F(i)> device and its legal counterpart.

The postulated action is stored as an image table, not as an operator: it is
only defined on the listed kets and is in general not linear.  The unique
linear map agreeing with it on |0>, |1> is available from
``linear_extension`` and can be compared against the table.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .qcore import (
    NORM_TOL,
    QubitBasis,
    StateVector,
    ket,
    tensor,
)

BASIS_LABELS = ("0", "1", "psi", "psibar")
FREE_LABELS = ("psi1", "psi2")
ALL_LABELS = BASIS_LABELS + FREE_LABELS

GRAM_TOL = 1e-12


class MachineError(ValueError):
    """The machine lacks an image, or an input does not match its label."""


@dataclass(frozen=True)
class Machine:
    """Image table of the postulated device.

    ``images`` maps input labels ("0", "1", "psi", "psibar", "psi1", "psi2")
    to ancilla states.  ``free_states`` optionally fixes the qubit kets
    behind the free slots "psi1" and "psi2".
    """

    blank: StateVector
    images: Mapping[str, StateVector]
    basis: QubitBasis = QubitBasis(math.pi / 4)
    free_states: Mapping[str, StateVector] = field(default_factory=dict)

    def __post_init__(self):
        d = self.blank.dim
        if self.blank.dims != (d,):
            raise MachineError("blank must live on a single ancilla factor")
        for label, img in self.images.items():
            if label not in ALL_LABELS:
                raise MachineError(f"unknown label {label!r}")
            if img.dims != (d,):
                raise MachineError(f"image of {label!r} has dims {img.dims}, expected {(d,)}")
        for label, s in self.free_states.items():
            if label not in FREE_LABELS:
                raise MachineError(f"free state label must be one of {FREE_LABELS}, got {label!r}")
            if s.dims != (2,):
                raise MachineError(f"free state {label!r} must be a qubit")
        object.__setattr__(self, "images", MappingProxyType(dict(self.images)))
        object.__setattr__(self, "free_states", MappingProxyType(dict(self.free_states)))

    @property
    def ancilla_dim(self) -> int:
        return self.blank.dim

    def image(self, label: str) -> StateVector:
        try:
            return self.images[label]
        except KeyError:
            raise MachineError(f"machine has no image for label {label!r}") from None

    def input_ket(self, label: str) -> StateVector:
        """The qubit ket named by ``label``."""
        if label == "0":
            return ket(0)
        if label == "1":
            return ket(1)
        if label == "psi":
            return self.basis.psi
        if label == "psibar":
            return self.basis.psibar
        if label in self.free_states:
            return self.free_states[label]
        raise MachineError(f"no input ket known for label {label!r}")

    def is_complete(self) -> bool:
        return all(lbl in self.images for lbl in BASIS_LABELS)


def constant_machine(image: StateVector, basis: QubitBasis = QubitBasis(math.pi / 4),
                     blank: StateVector | None = None) -> Machine:
    """Every basis label maps to the same ancilla state."""
    blank = image if blank is None else blank
    return Machine(blank, {lbl: image for lbl in BASIS_LABELS}, basis)


def cloning_machine(basis: QubitBasis = QubitBasis(math.pi / 4)) -> Machine:
    """F(j) = |j> for all four basis labels, on a qubit ancilla with blank |0>."""
    images = {"0": ket(0), "1": ket(1), "psi": basis.psi, "psibar": basis.psibar}
    return Machine(ket(0), images, basis)


def apply_postulate(m: Machine, label: str, system_state: StateVector) -> StateVector:
    """|label>|blank> -> |label>|F(label)> exactly as postulated.

    ``system_state`` must be the ket named by ``label`` (up to a global
    phase, which is carried through to the output).
    """
    img = m.image(label)
    if system_state.dims != (2,):
        raise MachineError("the machine acts on a single qubit")
    try:
        expected = m.input_ket(label)
    except MachineError:
        expected = None
    if expected is not None and abs(abs(expected.inner(system_state)) ** 2 - 1.0) > NORM_TOL:
        raise MachineError(f"input state is not the ket labelled {label!r}")
    return tensor(system_state, img)


def linear_extension(m: Machine) -> np.ndarray:
    """Isometry V: C^2 -> C^2 (x) ancilla with V|i> = |i>|F(i)> for i = 0, 1.

    Returned as a (2 * ancilla_dim) x 2 matrix whose columns are V|0>, V|1>.
    """
    cols = [tensor(ket(i), m.image(str(i))).amplitudes for i in (0, 1)]
    return np.column_stack(cols)


def postulate_deviation(m: Machine) -> float:
    """Worst-case infidelity between V|j> and the postulated |j>|F(j)>.

    Maximum over j in {psi, psibar} of 1 - |<j, F(j)| V |j>|^2.
    """
    v = linear_extension(m)
    worst = 0.0
    for label in ("psi", "psibar"):
        j = m.input_ket(label)
        target = tensor(j, m.image(label)).amplitudes
        overlap = np.vdot(target, v @ j.amplitudes)
        worst = max(worst, 1.0 - abs(overlap) ** 2)
    return min(max(worst, 0.0), 1.0)


def projected_machine(f0: StateVector, f1: StateVector,
                      basis: QubitBasis = QubitBasis(math.pi / 4),
                      blank: StateVector | None = None) -> Machine:
    """Machine whose psi/psibar images are read off the linear extension.

    F(j) is the normalized projection (<j| (x) 1) V|j>.  The resulting
    machine has zero deviation exactly when V|j> is already a product with
    |j>, e.g. F(0) = F(1), or a basis that coincides with {|0>, |1>}.
    """
    blank = f0 if blank is None else blank
    partial = Machine(blank, {"0": f0, "1": f1}, basis)
    v = linear_extension(partial)
    d = f0.dim
    images = {"0": f0, "1": f1}
    for label in ("psi", "psibar"):
        j = partial.input_ket(label)
        out = (v @ j.amplitudes).reshape(2, d)
        proj = j.amplitudes.conj() @ out
        n = np.linalg.norm(proj)
        if n < 1e-12:
            raise MachineError(f"linear extension has no |{label}> component to project")
        images[label] = StateVector(proj / n, (d,))
    return Machine(blank, images, basis)


@dataclass(frozen=True)
class GramSpec:
    """Target overlaps alpha = <psi1|psi2> and beta = <F(psi1)|F(psi2)>.

    ``beta`` defaults to ``alpha``.
    """

    alpha: complex
    beta: complex | None = None

    def __post_init__(self):
        alpha = complex(self.alpha)
        beta = alpha if self.beta is None else complex(self.beta)
        for name, z in (("alpha", alpha), ("beta", beta)):
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise MachineError(f"{name} must be finite")
            if abs(z) > 1.0 + GRAM_TOL:
                raise MachineError(f"|{name}| = {abs(z)!r} exceeds 1")
        object.__setattr__(self, "alpha", _clip_unit(alpha))
        object.__setattr__(self, "beta", _clip_unit(beta))


def _clip_unit(z: complex) -> complex:
    r = abs(z)
    return cmath.rect(1.0, cmath.phase(z)) if r > 1.0 else z


def _overlap_pair(z: complex) -> tuple[StateVector, StateVector]:
    # all phase sits on the |0> coefficient of the second vector
    second = np.array([z, math.sqrt(max(0.0, 1.0 - abs(z) ** 2))], dtype=complex)
    second = second / np.linalg.norm(second)
    return ket(0), StateVector(second, (2,))


@functools.lru_cache(maxsize=4096)
def realize_from_gram(g: GramSpec) -> tuple[StateVector, StateVector, StateVector, StateVector]:
    """Concrete (psi1, psi2, F(psi1), F(psi2)) with the requested overlaps."""
    psi1, psi2 = _overlap_pair(g.alpha)
    f1, f2 = _overlap_pair(g.beta)
    return psi1, psi2, f1, f2


def gram_machine(g: GramSpec, blank: StateVector | None = None) -> Machine:
    """Machine holding only the free-slot images realized from ``g``."""
    psi1, psi2, f1, f2 = realize_from_gram(g)
    return Machine(ket(0) if blank is None else blank,
                   {"psi1": f1, "psi2": f2},
                   free_states={"psi1": psi1, "psi2": psi2})


# -- machine-spec text format -------------------------------------------------
#
#   # comment
#   basis  = phi, gamma            (radians)
#   blank  = re,im ; re,im ; ...   (one pair per ancilla amplitude)
#   0      = ...
#   1      = ...
#   psi    = ...
#   psibar = ...

SPEC_LABELS = ("blank",) + BASIS_LABELS
SPEC_NORM_TOL = 1e-6


class MachineSpecError(ValueError):
    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


def _parse_float(tok: str, lineno: int) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise MachineSpecError(lineno, f"not a number: {tok!r}") from None
    if not math.isfinite(x):
        raise MachineSpecError(lineno, f"non-finite number {tok!r}")
    return x


def _parse_vector(rhs: str, lineno: int) -> np.ndarray:
    amps = []
    for chunk in rhs.split(";"):
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2 or not all(parts):
            raise MachineSpecError(lineno, f"expected 're,im' pair, got {chunk.strip()!r}")
        amps.append(complex(_parse_float(parts[0], lineno), _parse_float(parts[1], lineno)))
    v = np.array(amps, dtype=complex)
    n = np.linalg.norm(v)
    if abs(n - 1.0) > SPEC_NORM_TOL:
        raise MachineSpecError(lineno, f"vector norm is {n:.12g}, expected 1")
    return v / n


def parse_machine_spec(text: str) -> Machine:
    """Parse the line-oriented machine description into a Machine.

    Vectors whose norm is within 1e-6 of one are renormalized, so amplitudes
    such as 0.7071067812 can be written with ten decimals.
    """
    basis = None
    vectors: dict[str, tuple[np.ndarray, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MachineSpecError(lineno, "expected 'label = value'")
        label, rhs = (s.strip() for s in line.split("=", 1))
        if label in vectors or (label == "basis" and basis is not None):
            raise MachineSpecError(lineno, f"duplicate entry {label!r}")
        if label == "basis":
            parts = [p.strip() for p in rhs.split(",")]
            if len(parts) != 2:
                raise MachineSpecError(lineno, "basis needs 'phi,gamma'")
            basis = QubitBasis(_parse_float(parts[0], lineno), _parse_float(parts[1], lineno))
        elif label in SPEC_LABELS:
            vectors[label] = (_parse_vector(rhs, lineno), lineno)
        else:
            raise MachineSpecError(lineno, f"unknown label {label!r}")

    if "blank" not in vectors:
        raise MachineSpecError(None, "missing 'blank'")
    dim = vectors["blank"][0].size
    for label, (v, lineno) in vectors.items():
        if v.size != dim:
            raise MachineSpecError(lineno, f"{label!r} has {v.size} amplitudes, blank has {dim}")
    missing = [lbl for lbl in BASIS_LABELS if lbl not in vectors]
    if missing:
        raise MachineSpecError(None, f"incomplete machine, missing {missing}")
    if basis is None:
        raise MachineSpecError(None, "incomplete machine, missing 'basis'")
    states = {lbl: StateVector(v, (dim,)) for lbl, (v, _) in vectors.items()}
    blank = states.pop("blank")
    return Machine(blank, states, basis)


def load_machine(path) -> Machine:
    with open(path, encoding="utf-8") as fh:
        return parse_machine_spec(fh.read())


def format_machine_spec(m: Machine) -> str:
    """Inverse of parse_machine_spec for complete machines."""
    def vec(s: StateVector) -> str:
        return " ; ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in s.amplitudes)

    lines = [f"basis = {float(m.basis.phi)!r},{float(m.basis.gamma)!r}", f"blank = {vec(m.blank)}"]
    lines += [f"{lbl} = {vec(m.image(lbl))}" for lbl in BASIS_LABELS]
    return "\n".join(lines) + "\n"
