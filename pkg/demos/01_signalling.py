"""Bob's machine on half a singlet: can he tell which basis Alice measured in?

Run:  python demos/01_signalling.py
"""
import math

import numpy as np

from impossible_ops import machine, nogo, qcore
from impossible_ops.nogo import AliceBasis

np.set_printoptions(precision=4, suppress=True, linewidth=100)

basis = qcore.QubitBasis(math.pi / 4)

# The singlet looks the same in every basis.
singlet = nogo.build_singlet()
print("singlet amplitudes:", singlet.amplitudes.real)
print("re-expanded in the psi basis:", nogo.singlet_in_basis(basis).amplitudes.real)

# A would-be cloner writes |j> into the ancilla for all four kets.
clone = machine.cloning_machine(basis)

# Running the postulate branch by branch gives two *different* vectors,
# one per way of writing the singlet.  A linear device could not do this.
comp = nogo.post_machine_singlet(clone, AliceBasis.COMPUTATIONAL)
rot = nogo.post_machine_singlet(clone, AliceBasis.ROTATED)
print("\n|<comp|rot>| =", abs(comp.inner(rot)))

# What Bob holds once Alice has measured (outcome unknown to him):
for which in AliceBasis:
    print(f"\nrho_B after Alice measures in the {which.value} basis:")
    print(nogo.bob_mixture(clone, which).entries.real)

rep = nogo.signalling_test(clone)
print(f"\ntrace distance {rep.distance:.10f} -> {rep.verdict.value}")

# Compare with a machine that does nothing, and with the legal linear
# extension of the cloner's action on |0>, |1>.
print("\nconstant machine:", nogo.signalling_test(machine.constant_machine(qcore.ket(0), basis)).verdict.value)
v = machine.linear_extension(clone)
out = qcore.StateVector(v @ basis.psi.amplitudes, (2, 2))
print("legal extension on |psi> has entanglement", qcore.entanglement_entropy(out, [0]), "bit")
print("worst-case infidelity of the postulate vs. the extension:", machine.postulate_deviation(clone))
