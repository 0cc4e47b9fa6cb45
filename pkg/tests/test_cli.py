import csv
import io
import json

import pytest

from exppoly.cli import UsageError, emit, parse_grid, run
from exppoly.zerolab import Contour, ZeroList


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def result(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["command"] == argv[0]
    return doc["result"]


def test_hull_steinmetz():
    r = result("hull", "(1-3*exp(i*z))*exp(z^2) - z*exp(-i*z^2)")
    assert r["q"] == 2
    assert r["C"] == pytest.approx(2 * 2**0.5)
    assert r["C0"] == pytest.approx(2 + 2**0.5)
    assert len(r["critical_rays"]) == 4


def test_zeros_lattice():
    r = result("zeros", "--rect", "-1", "2", "-1", "7", "(exp(z)-1)*(exp(z)-2)*(exp(z)-3)")
    assert r["count"] == 6 and len(r["zeros"]) == 6


def test_verify_functional_equation():
    r = result("verify", "--eq", "f^2 - 2*exp(z)*f(z-log(2)) - 1", "--sol", "exp(z)+1")
    assert r["residual"] == "0" and r["residual_zero"] is True


def test_verify_quotient():
    r = result("verify", "--eq", "f^2 - exp(-z)*f'(z+2*pi*i)", "--sol", "1", "--den", "1-exp(z)")
    assert r["residual_zero"] is True


def test_count_csv():
    code, out, _ = call("count", "--grid", "5:20:3", "--csv", "exp(z)-1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "n", "N", "predicted", "residual"] and len(rows) == 4


def test_nevanlinna_and_deficiency():
    r = result("nevanlinna", "--grid", "1:10:3:geo", "exp(z)")
    assert r["rows"][0]["T"] == pytest.approx(1 / 3.141592653589793, rel=1e-9)
    d = result("deficiency", "--grid", "5:10:2", "--value", "0", "exp(z)")
    assert d["delta_estimate"] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "argv, key, value",
    [
        (("factor", "6 - 5*exp(z) + exp(2*z)"), "unit", "6"),
        (("divide", "exp(2*z)-1", "exp(z)-1"), "quotient", "1 + exp(z)"),
        (("root", "-d", "2", "1+exp(z)"), "exists", False),
        (("annihilate", "exp(z)"), "order", 1),
        (("duality", "1+z*exp(z)+2*exp(3*z)", "1-exp(-z)"), "strongly_dual", True),
        (("oscillation", "exp(z)+exp(0.8*z)"), "perimeter_condition", True),
        (("parse", "sin(z)"), "order", 1),
    ],
)
def test_commands(argv, key, value):
    assert result(*argv)[key] == value


def test_strips():
    r = result("strips", "6 - 5*exp(z) + exp(2*z)")
    assert len(r["critical_strips"]) == 2


def test_zeta():
    r = result("zeta", "--thinned", "2,3:1,1", "--ymax", "20")
    assert r["off_axis"] == 0 and r["on_axis"] > 0


def test_deterministic_output():
    a = call("zeros", "--disc", "10", "sin(z)")[1]
    b = call("zeros", "--disc", "10", "sin(z)")[1]
    assert a == b


def test_out_file(tmp_path):
    p = tmp_path / "hull.json"
    code, out, _ = call("hull", "--out", str(p), "exp(z)-1")
    assert code == 0 and out == ""
    assert json.loads(p.read_text())["result"]["q"] == 1


def test_empty_zero_list_csv():
    zl = ZeroList([], Contour.circle(1.0))
    assert emit(zl, "csv") == "re,im,multiplicity\n"
    code, out, _ = call("zeros", "--csv", "--disc", "3", "exp(z)")
    assert code == 0 and out == "re,im,multiplicity\n"


@pytest.mark.parametrize(
    "argv",
    [
        ("zeros", "exp(z"),
        ("zeros", "exp(z)"),
        ("count", "--grid", "5:1:3", "exp(z)"),
        ("count", "exp(z)"),
        ("factor", "--csv", "sin(z)"),
        ("nosuch",),
        ("zeros", "--tol", "-1", "--disc", "2", "exp(z)"),
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_computation_error_names_operation():
    code, _, err = call("zeros", "--disc", "3", "0")
    assert code == 1 and "zeros" in err


def test_grid_parser():
    assert parse_grid("1:4:4").tolist() == [1.0, 2.0, 3.0, 4.0]
    assert parse_grid("1:100:3:geo").tolist() == pytest.approx([1.0, 10.0, 100.0])
    with pytest.raises(UsageError):
        parse_grid("1:2")


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "exppoly", "parse", "exp(z)"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["canonical"] == "exp(z)"
