"""Seeded randomized property suites for qcore, machine and nogo.

``run_all`` is what the ``verify`` subcommand executes.  Functions are looked
up through their modules at call time so a patched implementation is the
one under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import machine, nogo, qcore

DEFAULT_SEED = 0xC0FFEE


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)


def _random_dims(rng):
    n = int(rng.integers(2, 4))
    dims = [int(rng.integers(1, 4)) for _ in range(n)]
    dims[0] = max(dims[0], 2)
    return dims


def qcore_suite(rng: np.random.Generator, n: int = 100) -> SuiteResult:
    res = SuiteResult("qcore")
    for _ in range(n):
        dims = _random_dims(rng)
        psi = qcore.random_state(rng, dims)
        rho = psi.density()
        for k in range(len(dims)):
            red = qcore.partial_trace(rho, [k])
            res.check(abs(np.trace(red.entries).real - 1.0) <= 1e-10,
                      f"partial trace lost trace: dims={dims} keep={k}")

        # bipartite Schmidt symmetry
        cut = int(rng.integers(1, len(dims)))
        left = list(range(cut))
        right = list(range(cut, len(dims)))
        ea = qcore.eigvals_hermitian(qcore.partial_trace(psi, left))
        eb = qcore.eigvals_hermitian(qcore.partial_trace(psi, right))
        m = min(ea.size, eb.size)
        res.check(np.abs(ea[:m] - eb[:m]).max() <= 1e-10
                  and np.abs(ea[m:]).max(initial=0) <= 1e-10
                  and np.abs(eb[m:]).max(initial=0) <= 1e-10,
                  f"Schmidt spectra differ: dims={dims} cut={cut}")

        # entropy invariant under a local unitary on each factor
        e0 = qcore.entanglement_entropy(psi, left)
        f = int(rng.integers(0, len(dims)))
        u = qcore.random_unitary(rng, dims[f])
        e1 = qcore.entanglement_entropy(qcore.apply_local(psi, f, u), left)
        res.check(abs(e0 - e1) <= 1e-9, f"entropy changed under local unitary: dims={dims} factor={f}")

        # triangle inequality and symmetry
        d = [qcore.random_density(rng, (2, 2), rank=int(rng.integers(1, 5))) for _ in range(3)]
        ab = qcore.trace_distance(d[0], d[1])
        ba = qcore.trace_distance(d[1], d[0])
        bc = qcore.trace_distance(d[1], d[2])
        ac = qcore.trace_distance(d[0], d[2])
        res.check(abs(ab - ba) <= 1e-10 and ac <= ab + bc + 1e-10 and 0.0 <= ab <= 1.0,
                  "trace distance symmetry/triangle failed")

        # closed-form 2x2 agrees with the iterative path
        h = qcore.random_density(rng, (2,)).entries
        res.check(np.abs(qcore.eigvals_hermitian(h) - qcore.jacobi_eigvals(h)).max() <= 1e-10,
                  "2x2 closed form disagrees with Jacobi")
    return res


def _random_machine(rng, ancilla_dim=2):
    imgs = {lbl: qcore.random_state(rng, (ancilla_dim,)) for lbl in machine.BASIS_LABELS}
    basis = qcore.QubitBasis(float(rng.uniform(0, math.pi)), float(rng.uniform(0, 2 * math.pi)))
    return machine.Machine(qcore.random_state(rng, (ancilla_dim,)), imgs, basis)


def consistent_machine(rng, ancilla_dim=2):
    """Random machine with zero postulate deviation."""
    g = qcore.random_state(rng, (ancilla_dim,))
    kind = int(rng.integers(0, 3))
    if kind == 0:
        basis = qcore.QubitBasis(float(rng.uniform(0, math.pi)), float(rng.uniform(0, 2 * math.pi)))
        return machine.projected_machine(g, g, basis)
    # a basis that coincides with {|0>, |1>} up to phases
    phi = 0.0 if kind == 1 else math.pi / 2
    basis = qcore.QubitBasis(phi, float(rng.uniform(0, 2 * math.pi)))
    return machine.projected_machine(g, qcore.random_state(rng, (ancilla_dim,)), basis)


def machine_suite(rng: np.random.Generator, n: int = 100) -> SuiteResult:
    res = SuiteResult("machine")
    for _ in range(n):
        dim = int(rng.integers(1, 5))
        m = _random_machine(rng, dim)
        v = machine.linear_extension(m)
        res.check(np.abs(v.conj().T @ v - np.eye(2)).max() <= 1e-12,
                  f"V^dag V != I for ancilla_dim={dim}")

        cm = consistent_machine(rng, max(dim, 1))
        dev = machine.postulate_deviation(cm)
        dist = nogo.signalling_test(cm).distance
        res.check(dev <= 1e-12 and dist <= 1e-9,
                  f"consistent machine: deviation={dev} distance={dist} basis={cm.basis}")

        alpha = complex(*rng.uniform(-1, 1, 2))
        if abs(alpha) > 1:
            alpha /= abs(alpha) * 1.0000001
        beta = complex(*rng.uniform(-1, 1, 2))
        if abs(beta) > 1:
            beta /= abs(beta) * 1.0000001
        p1, p2, f1, f2 = machine.realize_from_gram(machine.GramSpec(alpha, beta))
        res.check(abs(p1.inner(p2) - alpha) <= 1e-12 and abs(f1.inner(f2) - beta) <= 1e-12,
                  f"Gram round trip failed: alpha={alpha} beta={beta}")
    return res


def _draw_params(rng):
    a, c = rng.uniform(0, 1, 2)
    theta = rng.uniform(0, 2 * math.pi)
    return float(a), math.sqrt(1 - a * a), float(c), math.sqrt(1 - c * c), float(theta)


def nogo_suite(rng: np.random.Generator, n: int = 1000) -> SuiteResult:
    res = SuiteResult("nogo")
    for _ in range(n):
        a, b, c, d, theta = _draw_params(rng)
        lb, la = nogo.closed_form_lambdas(a, b, c, d, theta)
        g = machine.GramSpec(nogo.alpha_from_params(a, b, c, d, theta))
        before = nogo.build_shared_state(g)
        after = nogo.apply_general_operation(before, g)
        nb = qcore.eigvals_hermitian(nogo.alice_reduced(before, nogo.Stage.BEFORE))[0]
        na = qcore.eigvals_hermitian(nogo.alice_reduced(after, nogo.Stage.AFTER))[0]
        args = f"a={a!r} c={c!r} theta={theta!r}"
        res.check(abs(nb - lb) <= 1e-9 and abs(na - la) <= 1e-9,
                  f"closed form mismatch at {args}: numeric ({nb}, {na}) closed ({lb}, {la})")

        r = abs(g.alpha)
        if 0 < r < 1:
            res.check(nb > na, f"no strict violation at {args}")
        if r in (0.0, 1.0):
            res.check(abs(nb - na) <= 1e-12, f"boundary inequality at {args}")
        # lambda <= lambda^I  <=>  |alpha| >= 1, for alpha != 0
        if r > 0:
            res.check((la >= lb) == (r >= 1.0), f"chain sign disagreement at {args}")

        if min(a, b, c, d) > 0:
            bound = nogo.cos_theta_bound(a, b, c, d)
            res.check(bound >= 1 - 1e-12, f"bound below 1 at {args}: {bound}")
            eq = nogo.cos_theta_bound(a, b, a, b)
            res.check(abs(eq - 1.0) <= 1e-12, f"equality case off at a=c={a}: {eq}")

    for _ in range(100):
        basis = qcore.QubitBasis(float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0, 2 * math.pi)))
        err = nogo.singlet_basis_error(basis)
        res.check(err <= 1e-12, f"singlet not invariant in {basis}: {err}")
    return res


SUITES = (qcore_suite, machine_suite, nogo_suite)


def run_all(seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    return [suite(rng) for suite in SUITES]
