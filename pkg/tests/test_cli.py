import io
import json
import subprocess
import sys

import pytest

from localglobal.cli import parse_polynomial, run


@pytest.fixture(autouse=True)
def curve_file(tmp_path, monkeypatch):
    monkeypatch.setenv("LOCALGLOBAL_CURVE_FILE", str(tmp_path / "curve"))
    monkeypatch.delenv("LOCALGLOBAL_PREC", raising=False)


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue().rstrip("\n"), err.getvalue()


def test_padic_expand():
    assert cli("padic", "expand", "9/7", "-p", "5", "--prec", "6")[1] == "2 + 2*5 + 5^2 + 4*5^3 + 2*5^4 + 3*5^5 + O(5^6)"
    code, out, _ = cli("padic", "expand", "9/7", "--primes", "2..7", "--prec", "6")
    assert out.splitlines()[-1] == "p=7,9/7=2*7^-1 + 1 + O(7^6)"


def test_env_precision(monkeypatch):
    monkeypatch.setenv("LOCALGLOBAL_PREC", "3")
    assert cli("padic", "expand", "-1", "-p", "5")[1] == "4 + 4*5 + 4*5^2 + O(5^3)"


def test_teich_hensel_log():
    w = cli("teich", "2", "-p", "5", "--prec", "5")[1]
    assert w == "2 + 5 + 2*5^2 + 5^3 + 3*5^4 + O(5^5)"
    assert cli("hensel", "x^4-1", "2", "-p", "5", "--prec", "5")[1] == w
    assert cli("padic", "log", "6", "-p", "5", "--prec", "4")[0] == 0


def test_hilbert():
    assert cli("hilbert", "1", "1", "7")[1] == "+1"
    assert cli("hilbert", "-1", "-1", "inf")[1] == "-1"
    assert cli("hilbert", "-1", "-1")[1].splitlines()[-1] == "product: +1"


def test_qform():
    code, out, _ = cli("qform", "solve", "1", "1", "2")
    x, y, z = map(int, out.split())
    assert x * x + y * y == 2 * z * z and (x, y, z) != (0, 0, 0)
    code, _, err = cli("qform", "solve", "2", "2", "3")
    assert code == 1 and err.startswith("LocallyUnsolvable")
    assert "-10" in cli("qform", "table", "2")[1]


def test_crt_and_errors():
    assert cli("crt", "2:3", "3:5", "2:7")[1] == "23 mod 105"
    code, _, err = cli("crt", "1:4", "1:6")
    assert code == 1 and err.startswith("NotCoprime")
    assert cli("crt", "nonsense")[0] == 2
    assert cli("padic", "expand", "x/y", "-p", "3")[0] == 2
    assert cli("bogus")[0] == 2


def test_linsys(tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("2 2\n2 4\n6 8\n1 0\n")
    code, out, _ = cli("linsys", "solve", str(f))
    assert code == 0 and out.startswith("unsolvable")
    assert "divisors 2 4" in cli("linsys", "snf", str(f))[1]
    assert "consistent: yes" in cli("linsys", "modcheck", str(f))[1]


def test_ec_session():
    assert cli("ec", "disc")[0] == 2
    assert cli("ec", "init", "[0,0,1,-7,6]")[0] == 0
    assert cli("ec", "disc")[1] == "5077"
    assert cli("ec", "init", "0", "0", "1", "-1", "0")[0] == 0
    assert cli("ec", "torsion")[1] == "trivial\nO"
    assert cli("ec", "count", "5")[1] == "8"
    assert cli("ec", "ap", "7")[1].splitlines() == ["2 -2", "3 -3", "5 -2", "7 -1"]
    assert abs(float(cli("ec", "rank")[1]) - 1) < 0.2
    v = cli("ec", "lvalue", "2", "--mode", "euler", "--curve", "[0,-1,1,0,0]")[1]
    assert len(v.replace(".", "").lstrip("0")) <= 10
    code, _, err = cli("ec", "init", "0", "1", "0", "0", "0")
    assert code == 1 and err.startswith("SingularCurve")


def test_json_mirrors_text():
    code, out, _ = cli("--json", "ec", "torsion", "--curve", "[0,0,0,0,1]")
    data = json.loads(out)
    assert data["result"]["group"] == "Z/6Z"
    assert data["text"] == cli("ec", "torsion", "--curve", "[0,0,0,0,1]")[1]


def test_deterministic_output():
    a = cli("padic", "expand", "9/7", "--primes", "2..50", "--prec", "6")
    assert a == cli("padic", "expand", "9/7", "--primes", "2..50", "--prec", "6")


def test_polynomial_parser():
    assert parse_polynomial("x^4 - 1") == [-1, 0, 0, 0, 1]
    assert parse_polynomial("3*x^2+2x-5") == [-5, 2, 3]
    assert parse_polynomial("-x") == [0, -1]


def test_console_script_exit_codes():
    base = [sys.executable, "-m", "localglobal.cli"]
    assert subprocess.run(base + ["hilbert", "1", "1", "7"], capture_output=True).returncode == 0
    r = subprocess.run(base + ["crt", "1:4", "1:6"], capture_output=True, text=True)
    assert r.returncode == 1 and "NotCoprime" in r.stderr
    assert subprocess.run(base + ["padic"], capture_output=True).returncode == 2
