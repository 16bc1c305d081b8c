"""Parameter sweep over (a, c, theta) and a look at machine families.

Run:  python demos/03_sweep.py
Writes sweep.csv in the current directory.
"""
import csv
import math
from collections import Counter

import numpy as np

from impossible_ops import cli, machine, nogo, qcore, verify

cli.main(["sweep", "--a-steps", "10", "--c-steps", "10", "--theta-steps", "16", "--out", "sweep.csv"])
rows = list(csv.DictReader(open("sweep.csv")))
print(Counter(r["verdict"] for r in rows))

# Every RESPECTED row sits on |alpha| = 1, i.e. a = c and theta = 0.
for r in rows:
    if r["verdict"] == "RESPECTED":
        assert r["a"] == r["c"] and float(r["theta"]) == 0.0
print("all RESPECTED rows have a = c and theta = 0")

smallest = min(rows, key=lambda r: float(r["delta_E"]) if r["verdict"] == "VIOLATED" else math.inf)
print("smallest entanglement increase:", {k: smallest[k] for k in ("a", "c", "theta", "delta_E")})

# Signalling over random machines.  Zero deviation from the linear
# extension always means zero signal.  The converse does not hold: the
# phase-twisted constant machine below signals nothing, yet its postulate
# still disagrees with the linear extension.
rng = np.random.default_rng(7)
basis = qcore.QubitBasis(math.pi / 4)
g = qcore.ket(0)
twisted = machine.Machine(g, {"0": g, "1": qcore.StateVector([1j, 0], (2,)), "psi": g, "psibar": g}, basis)
print("\nphase-twisted constant machine: deviation %.3f, distance %.3g"
      % (machine.postulate_deviation(twisted), nogo.signalling_test(twisted).distance))

print("\nrandom machines (deviation, distance):")
for _ in range(5):
    m = machine.Machine(qcore.ket(0), {lbl: qcore.random_state(rng, (2,)) for lbl in machine.BASIS_LABELS}, basis)
    print(f"  {machine.postulate_deviation(m):.4f}  {nogo.signalling_test(m).distance:.4f}")
print("consistent machines:")
for _ in range(3):
    m = verify.consistent_machine(rng)
    print(f"  {machine.postulate_deviation(m):.1e}  {nogo.signalling_test(m).distance:.1e}")
