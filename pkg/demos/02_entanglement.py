"""Local action that raises entanglement: the second impossibility argument.

Run:  python demos/02_entanglement.py
"""
import math

from impossible_ops import nogo, qcore
from impossible_ops.machine import GramSpec
from impossible_ops.nogo import Stage

r = 1 / math.sqrt(2)
a = b = c = d = r
theta = math.pi / 2

alpha = nogo.alpha_from_params(a, b, c, d, theta)
print(f"alpha = <psi1|psi2> = {alpha:.6f}, |alpha| = {abs(alpha):.6f}")

g = GramSpec(alpha)  # beta defaults to alpha
before = nogo.build_shared_state(g)
after = nogo.apply_general_operation(before, g)

for stage, psi in ((Stage.BEFORE, before), (Stage.AFTER, after)):
    rho = nogo.alice_reduced(psi, stage, g)
    lam = qcore.eigvals_hermitian(rho)[0]
    print(f"{stage.value:>6}: lambda_max = {lam:.10f}, E = {qcore.entanglement_entropy(psi, [0]):.10f} bits")

lb, la = nogo.closed_form_lambdas(a, b, c, d, theta)
print(f"closed forms: 1/2 + |alpha|/2 = {lb:.10f}, 1/2 + |alpha|^2/2 = {la:.10f}")

# Assuming no increase of entanglement would force cos(theta) above this:
print(f"cos(theta) bound here: {nogo.cos_theta_bound(a, b, c, d):.10f}")
print(f"bound for a=0.8, b=0.6, c=0.6, d=0.8: {nogo.cos_theta_bound(0.8, 0.6, 0.6, 0.8):.10f}")

rep = nogo.monotonicity_test(a, b, c, d, theta)
print(f"\nverdict: {rep.verdict.value}, delta E = {rep.delta_entropy:.10f} bits")

# The argument leans on <F(psi1)|F(psi2)> = <psi1|psi2>.  Dropping that
# assumption: a machine that writes identical records (beta = 1) leaves the
# entanglement alone; one with |beta| < 1 always raises it.
for beta in (1.0, 0.9, 0.5, 0.0):
    rep = nogo.monotonicity_test(a, b, c, d, theta, beta_override=beta)
    print(f"beta = {beta:3.1f}: lambda_after = {rep.lambda_after:.6f}, {rep.verdict.value}")
