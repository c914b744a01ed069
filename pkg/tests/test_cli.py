from __future__ import annotations

import json
import subprocess
import sys

import pytest

from quillendef import __version__
from quillendef.cli import main
from quillendef.specfile import load_spec, spec_digest


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out), out


def test_machine_header_and_determinism(capsys):
    code, data, text = machine(capsys, "mc-ideal", "--spec", "wedge_r2_k3")
    assert code == 0
    assert data["engine"] == {"name": "quillendef", "version": __version__}
    assert data["spec"] == {"name": "wedge_r2_k3", "digest": spec_digest(load_spec("wedge_r2_k3"))}
    assert data["bounds"] == {"weight_min": -5, "degrees": [0, 1, 2]}
    assert len(data["ideal"]["generators"]) == 6
    _, _, again = machine(capsys, "mc-ideal", "--spec", "wedge_r2_k3")
    assert again == text


def test_cohomology(capsys):
    code, data, _ = machine(capsys, "cohomology", "--spec", "prod_s2s2_s3", "--degree", "1")
    assert code == 0
    assert "[x1,[x1,x2]]" in json.dumps(data)
    code, out, _ = run(capsys, "cohomology", "--spec", "prod_s2s2_s3", "--degrees=-1,0,1,2", "--degree", "0")
    assert code == 0 and out


def test_obstruction_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "obstruction", "--spec", "s3_s3_s8_s13", "--derivation", "theta1")
    assert code == 0 and "NONZERO in H^2" in out
    code, _, _ = run(capsys, "obstruction", "--spec", "s3_s3_s8_s13", "--derivation", "theta1", "--expect-zero")
    assert code == 2
    code, out, _ = run(capsys, "obstruction", "--spec", "s3_s3_s8_s10_e13", "--derivation", "theta1", "--expect-zero")
    assert code == 0 and "ZERO in H^2" in out and "NONZERO" not in out
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "obstruction", "--spec", "s3_s3_s8_s10_e13", "--derivation", "theta1", "--format", "machine", "--out", str(target))
    assert code == 0 and not out
    assert json.loads(target.read_text())["command"] == "obstruction"


def test_nilpotent(capsys):
    code, out, _ = run(capsys, "nilpotent", "--spec", "wedge_r2_k3", "--monomial", "t1*t6", "--monomial", "t2*t4")
    assert code == 0 and "t1*t6: power 2" in out and "t2*t4: power 1" in out
    code, _, _ = run(capsys, "nilpotent", "--spec", "wedge_r2_k3", "--monomial", "t1")
    assert code == 2
    code, data, _ = machine(capsys, "fan", "--spec", "wedge_r2_k3")
    assert code == 0 and data["certificates"]["success"] and len(data["certificates"]["powers"]) == 8


def test_fan_and_segre(capsys):
    code, out, _ = run(capsys, "fan", "--spec", "wedge_r3_k3")
    assert code == 0 and "72" in out
    code, data, _ = machine(capsys, "segre", "--spec", "segre_r3_s1_k3")
    assert code == 0
    seg = data["ideal"]
    assert (seg["r"], seg["c"], len(seg["minors"])) == (3, 8, 28) and seg["span_equal"]


def test_gauge_and_orbit(capsys, tmp_path):
    p = tmp_path / "p.der"
    p.write_text("[x1,[x2,x5]] d x10\n")
    b = tmp_path / "b.der"
    b.write_text("[x1,x2] d x5\n")
    code, out, _ = run(capsys, "gauge", "--spec", "s3_s3_s5_s10", "--derivation", str(p), "--action", str(b))
    assert code == 0 and "result on-shell: True" in out
    code, data, _ = machine(capsys, "orbit", "--family", "quadratic-form", "--point", "0,-1,1,0")
    assert code == 0 and "rank 2" in json.dumps(data)


def test_miniversal(capsys):
    code, data, _ = machine(capsys, "miniversal", "--spec", "prod_s2s3_s4")
    assert code == 0 and data["command"] == "miniversal"


@pytest.mark.parametrize(
    "argv",
    [
        ["mc-ideal", "--spec", "no_such_spec"],
        ["mc-ideal"],
        ["bogus"],
        ["mc-ideal", "--spec", "wedge_r2_k3", "--weight-min", "3"],
        ["obstruction", "--spec", "wedge_r2_k3"],
        ["orbit", "--family", "quadratic-form", "--point", "1,2"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "quillendef.cli", "quillen", "--spec", "prod_s2s2_s3"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert res.returncode == 0 and "x1x3" in res.stdout
