"""Command-line front end.

Exit codes: 0 ok, 1 verify failure, 2 bad input, 3 internal inconsistency,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import nogo, verify
from .machine import MachineError, MachineSpecError, load_machine
from .qcore import QuantumError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_IO = 4

CSV_HEADER = ("a,b,c,d,theta,alpha_re,alpha_im,abs_alpha,lambda_before,lambda_after,"
              "E_before,E_after,delta_E,cos_bound,verdict").split(",")
ALPHA_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class SweepGrid:
    """Interior grid a_i = i/(N+1) (same for c) and theta_k = 2 pi k / T."""

    a_steps: int
    c_steps: int
    theta_steps: int

    def __post_init__(self):
        for name in ("a_steps", "c_steps", "theta_steps"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")

    def a_values(self) -> list[float]:
        return [i / (self.a_steps + 1) for i in range(1, self.a_steps + 1)]

    def c_values(self) -> list[float]:
        return [i / (self.c_steps + 1) for i in range(1, self.c_steps + 1)]

    def theta_values(self) -> list[float]:
        return [2 * math.pi * k / self.theta_steps for k in range(self.theta_steps)]

    def points(self) -> list[tuple[float, float, float]]:
        return [(a, c, t) for a in self.a_values() for c in self.c_values() for t in self.theta_values()]

    def __len__(self):
        return self.a_steps * self.c_steps * self.theta_steps


def _fmt(x: float) -> str:
    s = format(float(x), ".12g")
    return "0" if s == "-0" else s


def sweep_row(point: tuple[float, float, float]) -> list[str]:
    a, c, theta = point
    b, d = math.sqrt(1 - a * a), math.sqrt(1 - c * c)
    r = nogo.monotonicity_test(a, b, c, d, theta)
    verdict = "VIOLATED" if r.verdict is nogo.MonotoneVerdict.MONOTONE_VIOLATED else "RESPECTED"
    return [
        _fmt(a), _fmt(b), _fmt(c), _fmt(d), _fmt(theta),
        _fmt(r.alpha.real), _fmt(r.alpha.imag), _fmt(abs(r.alpha)),
        _fmt(r.lambda_before), _fmt(r.lambda_after),
        _fmt(r.entropy_before), _fmt(r.entropy_after), _fmt(r.delta_entropy),
        "" if r.cos_bound is None else _fmt(r.cos_bound),
        verdict,
    ]


def sweep_rows(grid: SweepGrid, workers: int = 1) -> list[list[str]]:
    """All rows in lexicographic (a, c, theta) order, however they are computed."""
    pts = grid.points()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(sweep_row, pts, chunksize=64))
    return [sweep_row(p) for p in pts]


def render_sweep_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)
    return buf.getvalue()


def _matrix_lines(m: np.ndarray) -> list[str]:
    lines = []
    for row in m:
        lines.append("  " + "  ".join(f"{z.real:+.10f}{z.imag:+.10f}i" for z in row))
    return lines


def cmd_signalling(args, out) -> int:
    try:
        m = load_machine(args.machine)
    except OSError as e:
        print(f"error: cannot read {args.machine}: {e}", file=sys.stderr)
        return EXIT_IO
    except (MachineSpecError, MachineError, QuantumError) as e:
        print(f"error: {args.machine}: {e}", file=sys.stderr)
        return EXIT_INPUT
    rep = nogo.signalling_test(m)
    print(f"basis: phi={m.basis.phi:.10f} gamma={m.basis.gamma:.10f}  ancilla_dim={m.ancilla_dim}", file=out)
    print("rho_B (Alice measured {|0>,|1>}):", file=out)
    print("\n".join(_matrix_lines(rep.rho_b_computational.entries)), file=out)
    print("rho_B (Alice measured {|psi>,|psibar>}):", file=out)
    print("\n".join(_matrix_lines(rep.rho_b_rotated.entries)), file=out)
    print(f"trace distance: {rep.distance:.10f}", file=out)
    print(f"verdict: {rep.verdict.value}", file=out)
    return EXIT_OK


def cmd_entanglement(args, out) -> int:
    a, c, theta = args.a, args.c, args.theta
    if not all(math.isfinite(x) for x in (a, c, theta)):
        print("error: a, c, theta must be finite", file=sys.stderr)
        return EXIT_INPUT
    if not (0.0 <= a <= 1.0 and 0.0 <= c <= 1.0):
        print("error: a and c must lie in [0, 1]", file=sys.stderr)
        return EXIT_INPUT
    if (args.beta_re is None) != (args.beta_im is None):
        print("error: give both --beta-re and --beta-im or neither", file=sys.stderr)
        return EXIT_INPUT
    beta = None if args.beta_re is None else complex(args.beta_re, args.beta_im)
    b, d = math.sqrt(1 - a * a), math.sqrt(1 - c * c)
    try:
        r = nogo.monotonicity_test(a, b, c, d, theta, beta)
    except nogo.ConsistencyError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (MachineError, QuantumError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    rows = [
        ("a", r.a), ("b", r.b), ("c", r.c), ("d", r.d), ("theta", r.theta),
        ("alpha_re", r.alpha.real), ("alpha_im", r.alpha.imag), ("abs_alpha", abs(r.alpha)),
        ("beta_re", r.beta.real), ("beta_im", r.beta.imag),
        ("lambda_before", r.lambda_before), ("lambda_after", r.lambda_after),
        ("lambda_before_closed", r.lambda_before_closed), ("lambda_after_closed", r.lambda_after_closed),
        ("E_before", r.entropy_before), ("E_after", r.entropy_after), ("delta_E", r.delta_entropy),
    ]
    for name, val in rows:
        print(f"{name:<22}{val:.10f}", file=out)
    print(f"{'cos_bound':<22}{'undefined' if r.cos_bound is None else format(r.cos_bound, '.10f')}", file=out)
    print(f"{'verdict':<22}{r.verdict.value}", file=out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    try:
        grid = SweepGrid(args.a_steps, args.c_steps, args.theta_steps)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        rows = sweep_rows(grid, args.workers)
    except nogo.ConsistencyError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    text = render_sweep_csv(rows)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    violated = sum(row[-1] == "VIOLATED" for row in rows)
    boundary = sum(float(row[7]) >= 1 - ALPHA_BOUNDARY_TOL for row in rows)
    print(f"wrote {len(rows)} rows to {args.out}: {violated} VIOLATED, "
          f"{len(rows) - violated} RESPECTED ({boundary} with |alpha| = 1)", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    results = verify.run_all(args.seed)
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{res.name:<8} {res.cases:6d} cases  {len(res.failures):4d} failures  {status}", file=out)
        for f in res.failures[:20]:
            print(f"    {f}", file=out)
        ok = ok and res.passed
    print(f"seed 0x{args.seed:X}: {'all suites passed' if ok else 'FAILED'}", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


def _hex_int(s: str) -> int:
    return int(s, 16)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="impossible-ops",
        description="Numerical checks of the no-signalling and entanglement arguments "
                    "against the general impossible operation.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("signalling", help="compare Bob's mixtures for a machine file")
    s.add_argument("--machine", required=True, help="machine-spec file")
    s.set_defaults(func=cmd_signalling)

    e = sub.add_parser("entanglement", help="run the entanglement argument at one point")
    e.add_argument("--a", type=float, required=True)
    e.add_argument("--c", type=float, required=True)
    e.add_argument("--theta", type=float, required=True)
    e.add_argument("--beta-re", type=float)
    e.add_argument("--beta-im", type=float)
    e.set_defaults(func=cmd_entanglement)

    w = sub.add_parser("sweep", help="write a CSV over an (a, c, theta) grid")
    w.add_argument("--a-steps", type=int, required=True)
    w.add_argument("--c-steps", type=int, required=True)
    w.add_argument("--theta-steps", type=int, required=True)
    w.add_argument("--out", required=True)
    w.add_argument("--workers", type=int, default=1, help="worker processes (output order is fixed)")
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run the randomized invariant suites")
    v.add_argument("--seed", type=_hex_int, default=verify.DEFAULT_SEED, help="hex seed (default C0FFEE)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, which matches the input-error code
        return int(e.code or 0)
    return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
