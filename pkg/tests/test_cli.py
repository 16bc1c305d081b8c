import csv
import io
import math
import subprocess
import sys

import pytest

from impossible_ops import cli, nogo

CLONING = """\
basis  = 0.7853981633974483, 0
blank  = 1,0 ; 0,0
0      = 1,0 ; 0,0
1      = 0,0 ; 1,0
psi    = 0.7071067812,0 ; 0.7071067812,0
psibar = -0.7071067812,0 ; 0.7071067812,0
"""

CONSTANT = """\
# every input leaves the blank untouched
basis  = 0.7853981633974483, 0
blank  = 1,0 ; 0,0
0      = 1,0 ; 0,0
1      = 1,0 ; 0,0
psi    = 1,0 ; 0,0
psibar = 1,0 ; 0,0
"""


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def machine_file(tmp_path):
    def make(text):
        p = tmp_path / "m.machine"
        p.write_text(text)
        return str(p)
    return make


# -- signalling -------------------------------------------------------------------

def test_signalling_constant(machine_file):
    code, out = run(["signalling", "--machine", machine_file(CONSTANT)])
    assert code == 0
    assert "trace distance: 0.0000000000" in out
    assert "verdict: NO_SIGNALLING" in out


def test_signalling_cloning(machine_file):
    code, out = run(["signalling", "--machine", machine_file(CLONING)])
    assert code == 0
    assert "trace distance: 0.5000000000" in out
    assert "verdict: SIGNALLING" in out
    assert "+0.5000000000+0.0000000000i" in out


def test_signalling_bad_arity(machine_file, capsys):
    text = CLONING.replace("psi    = 0.7071067812,0 ; 0.7071067812,0", "psi = 1,0 ;")
    code, _ = run(["signalling", "--machine", machine_file(text)])
    assert code == 2
    assert "line 5" in capsys.readouterr().err


def test_signalling_incomplete(machine_file, capsys):
    text = "\n".join(l for l in CLONING.splitlines() if not l.startswith("psibar"))
    code, _ = run(["signalling", "--machine", machine_file(text)])
    assert code == 2
    assert "incomplete" in capsys.readouterr().err


def test_signalling_missing_file(tmp_path):
    code, _ = run(["signalling", "--machine", str(tmp_path / "nope")])
    assert code == 4


# -- entanglement ---------------------------------------------------------------------

def _field(out, name):
    for line in out.splitlines():
        if line.split()[0] == name:
            return line.split()[1]
    raise KeyError(name)


def test_entanglement_paper_point():
    code, out = run(["entanglement", "--a", "0.7071067812", "--c", "0.7071067812", "--theta", "1.5707963268"])
    assert code == 0
    assert _field(out, "lambda_before") == "0.8535533906"
    assert _field(out, "lambda_after") == "0.7500000000"
    assert _field(out, "verdict") == "MONOTONE_VIOLATED"


def test_entanglement_identical():
    code, out = run(["entanglement", "--a", "1", "--c", "1", "--theta", "0"])
    assert code == 0
    assert _field(out, "lambda_before") == _field(out, "lambda_after") == "1.0000000000"
    assert _field(out, "verdict") == "MONOTONE_RESPECTED"
    assert _field(out, "cos_bound") == "undefined"


def test_entanglement_orthogonal():
    code, out = run(["entanglement", "--a", "1", "--c", "0", "--theta", "0"])
    assert code == 0
    assert float(_field(out, "abs_alpha")) == 0
    assert _field(out, "lambda_before") == _field(out, "lambda_after") == "0.5000000000"


def test_entanglement_beta_override():
    code, out = run(["entanglement", "--a", "0.6", "--c", "0.8", "--theta", "0.4", "--beta-re", "1", "--beta-im", "0"])
    assert code == 0
    assert _field(out, "beta_re") == "1.0000000000"
    assert _field(out, "verdict") == "MONOTONE_RESPECTED"


@pytest.mark.parametrize("argv", [
    ["--a", "1.5", "--c", "0.2", "--theta", "0"],
    ["--a", "0.5", "--c", "-0.1", "--theta", "0"],
    ["--a", "0.5", "--c", "0.5", "--theta", "0", "--beta-re", "0.3"],
    ["--a", "0.5", "--c", "0.5", "--theta", "0", "--beta-re", "2", "--beta-im", "0"],
    ["--a", "nan", "--c", "0.5", "--theta", "0"],
])
def test_entanglement_bad_input(argv):
    code, _ = run(["entanglement"] + argv)
    assert code == 2


def test_entanglement_internal_error(monkeypatch):
    monkeypatch.setattr(nogo, "eigvals_hermitian", lambda m: [0.9, 0.1])
    code, _ = run(["entanglement", "--a", "0.6", "--c", "0.8", "--theta", "0.4"])
    assert code == 3


# -- sweep -------------------------------------------------------------------------------

def test_sweep_single_point(tmp_path):
    out = tmp_path / "s.csv"
    code, _ = run(["sweep", "--a-steps", "1", "--c-steps", "1", "--theta-steps", "1", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    lines = text.split("\n")
    assert lines[0] == ",".join(cli.CSV_HEADER)
    assert len([l for l in lines if l]) == 2
    row = dict(zip(cli.CSV_HEADER, lines[1].split(",")))
    # a = c = 1/2, theta = 0: identical states, |alpha| = 1
    assert row["a"] == "0.5" and row["theta"] == "0"
    assert row["verdict"] == "RESPECTED"


def test_sweep_interior_midpoint_violates(tmp_path):
    out = tmp_path / "s.csv"
    code, _ = run(["sweep", "--a-steps", "1", "--c-steps", "2", "--theta-steps", "1", "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 2
    for r in rows:
        if 0 < float(r["abs_alpha"]) < 1:
            assert float(r["delta_E"]) > 0 and r["verdict"] == "VIOLATED"


def test_sweep_order_and_closed_forms(tmp_path):
    out = tmp_path / "s.csv"
    run(["sweep", "--a-steps", "3", "--c-steps", "2", "--theta-steps", "4", "--out", str(out)])
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 24
    keys = [(float(r["a"]), float(r["c"]), float(r["theta"])) for r in rows]
    assert keys == sorted(keys)
    for r in rows:
        a, b, c, d, t = (float(r[k]) for k in ("a", "b", "c", "d", "theta"))
        lb, la = nogo.closed_form_lambdas(a, math.sqrt(1 - a * a), c, math.sqrt(1 - c * c), t)
        assert abs(float(r["lambda_before"]) - lb) <= 1e-9
        assert abs(float(r["lambda_after"]) - la) <= 1e-9


def test_sweep_deterministic_and_parallel_identical(tmp_path):
    outs = []
    for workers in ("1", "1", "2"):
        p = tmp_path / f"s{len(outs)}.csv"
        run(["sweep", "--a-steps", "3", "--c-steps", "3", "--theta-steps", "5", "--out", str(p), "--workers", workers])
        outs.append(p.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    assert b"\r" not in outs[0]


def test_sweep_degenerate_rows_have_empty_bound():
    row = cli.sweep_row((0.0, 0.5, 0.3))
    assert row[cli.CSV_HEADER.index("cos_bound")] == ""


def test_sweep_bad_steps(tmp_path):
    code, _ = run(["sweep", "--a-steps", "0", "--c-steps", "1", "--theta-steps", "1", "--out", str(tmp_path / "x")])
    assert code == 2


def test_sweep_io_error(tmp_path):
    code, _ = run(["sweep", "--a-steps", "1", "--c-steps", "1", "--theta-steps", "1",
                   "--out", str(tmp_path / "missing" / "x.csv")])
    assert code == 4


def test_grid_values():
    g = cli.SweepGrid(3, 1, 4)
    assert g.a_values() == [0.25, 0.5, 0.75]
    assert g.c_values() == [0.5]
    assert g.theta_values() == [0, math.pi / 2, math.pi, 3 * math.pi / 2]
    assert len(g) == len(g.points()) == 12


# -- verify ---------------------------------------------------------------------------------

def test_verify_passes():
    code, out = run(["verify"])
    assert code == 0
    for name in ("qcore", "machine", "nogo"):
        line = next(l for l in out.splitlines() if l.startswith(name))
        assert int(line.split()[1]) > 0 and line.endswith("PASS")


def test_verify_custom_seed():
    code, out = run(["verify", "--seed", "1234"])
    assert code == 0
    assert "seed 0x1234" in out


def test_verify_detects_injected_fault(monkeypatch):
    real = nogo.closed_form_lambdas

    def wrong_sign(*args):
        lb, la = real(*args)
        return lb, 1.0 - la

    monkeypatch.setattr(nogo, "closed_form_lambdas", wrong_sign)
    code, out = run(["verify"])
    assert code == 1
    assert "closed form mismatch at a=" in out


def test_usage_error_exit_code():
    code, _ = run(["entanglement", "--a", "0.5"])
    assert code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "impossible_ops", "entanglement", "--a", "1", "--c", "0", "--theta", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "MONOTONE_RESPECTED" in res.stdout
