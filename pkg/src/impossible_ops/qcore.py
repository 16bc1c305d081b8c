"""Dense complex linear algebra on small tensor-product Hilbert spaces.

States carry their factor dimensions (big-endian: factor 0 is the most
significant index).  Every value is immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 64


class QuantumError(ValueError):
    """Invalid quantum-state input (bad dimensions, norm, hermiticity, ...)."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _check_dims(dims: Iterable[int], size: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise QuantumError(f"invalid factor dimensions {dims}")
    if math.prod(dims) != size:
        raise QuantumError(f"dims {dims} do not match size {size}")
    return dims


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized ket on a tensor product of factors with dimensions ``dims``."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        dims = _check_dims(self.dims, amps.size)
        norm2 = float(np.vdot(amps, amps).real)
        if not math.isfinite(norm2):
            raise QuantumError("amplitudes must be finite")
        if abs(norm2 - 1.0) > NORM_TOL:
            raise QuantumError(f"state not normalized: |psi|^2 = {norm2!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_amplitudes(cls, amplitudes, dims=None, normalize=False) -> StateVector:
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if normalize:
            n = np.linalg.norm(amps)
            if n == 0:
                raise QuantumError("cannot normalize the zero vector")
            amps = amps / n
        return cls(amps, (amps.size,) if dims is None else tuple(dims))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: StateVector) -> complex:
        """<self|other>."""
        if self.dims != other.dims:
            raise QuantumError(f"dimension mismatch {self.dims} vs {other.dims}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)

    def __repr__(self):
        return f"StateVector({np.round(self.amplitudes, 10).tolist()}, dims={self.dims})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    entries: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise QuantumError(f"density matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise QuantumError("entries must be finite")
        dims = _check_dims(self.dims, m.shape[0])
        herm_err = np.abs(m - m.conj().T).max()
        if herm_err > HERMITIAN_TOL:
            raise QuantumError(f"matrix not Hermitian (max deviation {herm_err:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise QuantumError(f"trace is {tr!r}, expected 1")
        object.__setattr__(self, "entries", _frozen(m))
        object.__setattr__(self, "dims", dims)
        low = eigvals_hermitian(m)[-1]
        if low < -PSD_TOL:
            raise QuantumError(f"matrix not positive semidefinite (eigenvalue {low!r})")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigvals(self) -> np.ndarray:
        return eigvals_hermitian(self)

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims},\n{np.round(self.entries, 10)})"


@dataclass(frozen=True)
class QubitBasis:
    """Orthonormal qubit pair parameterized by an angle and a relative phase.

    psi    = cos(phi)|0> + e^{i gamma} sin(phi)|1>
    psibar = -e^{-i gamma} sin(phi)|0> + cos(phi)|1>

    With this choice the matrix [[psi], [psibar]] has determinant 1, so the
    antisymmetric two-qubit combination keeps the same sign in every basis.
    """

    phi: float
    gamma: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.phi) and math.isfinite(self.gamma)):
            raise QuantumError("basis angles must be finite")

    @property
    def psi(self) -> StateVector:
        return StateVector(
            [math.cos(self.phi), np.exp(1j * self.gamma) * math.sin(self.phi)], (2,)
        )

    @property
    def psibar(self) -> StateVector:
        return StateVector(
            [-np.exp(-1j * self.gamma) * math.sin(self.phi), math.cos(self.phi)], (2,)
        )

    def matrix(self) -> np.ndarray:
        """Unitary whose columns are psi and psibar."""
        return np.column_stack([self.psi.amplitudes, self.psibar.amplitudes])


COMPUTATIONAL_BASIS = QubitBasis(0.0, 0.0)


def ket(index: int, dim: int = 2) -> StateVector:
    """Computational basis ket |index> in a ``dim``-dimensional space."""
    if not 0 <= index < dim:
        raise QuantumError(f"index {index} out of range for dimension {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return StateVector(v, (dim,))


def tensor(u: StateVector, v: StateVector) -> StateVector:
    """Kronecker product u (x) v; factor dims are concatenated."""
    amps = np.outer(u.amplitudes, v.amplitudes).reshape(-1)
    # renormalize to remove rounding drift accumulated over long products
    amps = amps / np.linalg.norm(amps)
    return StateVector(amps, u.dims + v.dims)


def tensor_all(*states: StateVector) -> StateVector:
    out = states[0]
    for s in states[1:]:
        out = tensor(out, s)
    return out


def _normalize_keep(keep, n: int) -> tuple[int, ...]:
    if isinstance(keep, (int, np.integer)):
        keep = (keep,)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep:
        raise QuantumError("keep must name at least one factor")
    bad = [k for k in keep if not 0 <= k < n]
    if bad:
        raise QuantumError(f"invalid factor indices {bad} for {n} factors")
    if len(keep) == n:
        raise QuantumError("keep names every factor; partial trace would be the identity")
    return keep


def partial_trace(rho: DensityMatrix | StateVector, keep) -> DensityMatrix:
    """Reduce ``rho`` onto the factors listed in ``keep``.

    A StateVector is accepted directly and reduced without forming the full
    projector.
    """
    dims = rho.dims
    n = len(dims)
    keep = _normalize_keep(keep, n)
    drop = tuple(i for i in range(n) if i not in keep)
    dk = math.prod(dims[i] for i in keep)
    dd = math.prod(dims[i] for i in drop)

    if isinstance(rho, StateVector):
        t = rho.amplitudes.reshape(dims).transpose(keep + drop).reshape(dk, dd)
        red = t @ t.conj().T
    else:
        t = rho.entries.reshape(dims + dims)
        perm = keep + drop
        t = t.transpose(perm + tuple(n + p for p in perm)).reshape(dk, dd, dk, dd)
        red = np.einsum("ajbj->ab", t)
    red = 0.5 * (red + red.conj().T)
    return DensityMatrix(red, tuple(dims[i] for i in keep))


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return np.array(m.entries)
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise QuantumError(f"expected a square matrix, got shape {a.shape}")
    return a


def _eig2(a: np.ndarray) -> np.ndarray:
    # 1/2 (t +- sqrt(t^2 - 4 det)); the discriminant is written as
    # (a00 - a11)^2 + 4|a01|^2, which equals t^2 - 4 det for Hermitian input
    # and is never negative
    p, q = a[0, 0].real, a[1, 1].real
    t = p + q
    disc = math.sqrt((p - q) ** 2 + 4.0 * abs(a[0, 1]) ** 2)
    return np.array([0.5 * (t + disc), 0.5 * (t - disc)])


def jacobi_eigvals(m, tol: float = JACOBI_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm is at most ``tol`` times
    max(1, ||m||_F).  Returned in descending order.
    """
    a = _as_matrix(m).copy()
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                phase = apq / g
                theta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
    else:
        raise QuantumError("Jacobi iteration did not converge")
    return np.sort(np.diag(a).real)[::-1]


def eigvals_hermitian(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order.

    2x2 inputs use the closed form; larger ones go through ``jacobi_eigvals``.
    """
    a = _as_matrix(m)
    if np.abs(a - a.conj().T).max() > HERMITIAN_TOL:
        raise QuantumError("matrix is not Hermitian")
    if a.shape[0] == 1:
        return np.array([a[0, 0].real])
    if a.shape[0] == 2:
        return _eig2(a)
    return jacobi_eigvals(a)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """1/2 ||a - b||_1, computed from the eigenvalues of the difference."""
    if a.dims != b.dims:
        raise QuantumError(f"dimension mismatch {a.dims} vs {b.dims}")
    diff = a.entries - b.entries
    diff = 0.5 * (diff + diff.conj().T)
    d = 0.5 * float(np.sum(np.abs(eigvals_hermitian(diff))))
    return min(max(d, 0.0), 1.0)


ENTROPY_ZERO = 1e-14


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy in bits, with 0 log 0 = 0.

    Results below 1e-14 bits are rounding noise from a rank-one spectrum and
    are reported as exactly zero.
    """
    lam = eigvals_hermitian(rho)
    lam = lam[lam > 0.0]
    s = float(-np.sum(lam * np.log2(lam)))
    return 0.0 if s < ENTROPY_ZERO else s


def binary_entropy(p: float) -> float:
    """H2(p) in bits, with 0 log 0 = 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def entanglement_entropy(psi: StateVector, cut: Sequence[int] | int) -> float:
    """Entropy of entanglement of a pure state across the bipartition ``cut``.

    ``cut`` lists the factors on one side; the rest form the other side.
    """
    keep = _normalize_keep(cut, len(psi.dims))
    return von_neumann_entropy(partial_trace(psi, keep))


def random_state(rng: np.random.Generator, dims: Sequence[int]) -> StateVector:
    """Haar-random pure state."""
    n = math.prod(dims)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return StateVector(v / np.linalg.norm(v), tuple(dims))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(rng: np.random.Generator, dims: Sequence[int], rank: int | None = None) -> DensityMatrix:
    n = math.prod(dims)
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T) / np.trace(m).real
    return DensityMatrix(m, tuple(dims))


def apply_local(psi: StateVector, factor: int, u: np.ndarray) -> StateVector:
    """Apply the unitary ``u`` to one factor of ``psi``."""
    dims = psi.dims
    t = psi.amplitudes.reshape(dims)
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [factor])), 0, factor)
    amps = t.reshape(-1)
    return StateVector(amps / np.linalg.norm(amps), dims)
