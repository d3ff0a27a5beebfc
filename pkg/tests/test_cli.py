from __future__ import annotations

import json
import math

import pytest

from motzkin_tn.cli import main
from motzkin_tn.tensors import TensorSet


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_state_pyramid(capsys, tmp_path):
    code, out, _ = run(capsys, "state", "pyramid", "--n", "2", "--t", "1")
    assert code == 0 and "nnz 9" in out
    code, out, _ = run(capsys, "state", "pyramid", "--n", "1", "--t", "1")
    assert "norm^2 2" in out
    path = tmp_path / "s.json"
    code, _, _ = run(capsys, "state", "u1", "--n", "2", "--k", "0", "--out", str(path))
    assert code == 0 and len(json.loads(path.read_text())["amplitudes"]) == 19


def test_state_is_deterministic(capsys):
    a = run(capsys, "state", "hrn-periodic", "--n", "2", "--k", "1", "--format", "json")[1]
    b = run(capsys, "state", "hrn-periodic", "--n", "2", "--k", "1", "--format", "json")[1]
    assert a == b and json.loads(a)["n_sites"] == 4


def test_contract_config(capsys):
    assert run(capsys, "contract", "pyramid", "--n", "2", "--t", "t", "--config", "++--")[1].strip() == "t^4"
    assert run(capsys, "contract", "pyramid", "--n", "2", "--config=-+00")[1].strip() == "0"
    code, out, _ = run(capsys, "contract", "fredkin", "--n", "1")
    assert json.loads(out)["amplitudes"] == {"ud": "1"}


def test_usage_errors(capsys):
    assert run(capsys, "state", "u1", "--n", "3")[0] == 2
    assert run(capsys, "state", "u1", "--n", "2", "--k", "1")[0] == 2
    assert run(capsys, "state", "hrn-periodic", "--n", "2")[0] == 2
    assert run(capsys, "contract", "pyramid", "--n", "2", "--config", "xx")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["state", "bogus", "--n", "1"])
    assert exc.value.code == 2


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "zipper-bt")
    assert code == 0
    rows = [l for l in out.splitlines() if l[:1] in ("0", "1")]
    assert len(rows) == 36
    ts = TensorSet()
    bad = ts.replace("B", ts["B"].without(next(iter(ts["B"].entries))))
    path = tmp_path / "bad.json"
    path.write_text(bad.to_json())
    code, _, err = run(capsys, "verify", "zipper-bt", "--tensors", str(path))
    assert code == 1 and "FAILED" in err
    assert run(capsys, "verify", "--tensors", str(tmp_path / "missing.json"))[0] == 2
    code, out, _ = run(capsys, "verify", "gw-bt", "--format", "json")
    assert code == 0 and json.loads(out)[0]["passed"]


def test_verify_all(capsys):
    assert run(capsys, "verify", "all")[0] == 0


def test_entropy(capsys, tmp_path):
    csv_path = tmp_path / "e.csv"
    code, out, _ = run(capsys, "entropy", "--csv", str(csv_path))
    assert code == 0
    lines = out.splitlines()[1:]
    values = [float(l.split()[2]) for l in lines]
    assert values[0] == pytest.approx(math.log(2), abs=1e-6)
    assert "4/9, 4/9, 1/9" in lines[1]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert len(csv_path.read_text().splitlines()) == 7
    assert run(capsys, "entropy", "--n", "7")[0] == 2


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "pyramid", "--n", "2", "--config", "0000")
    assert code == 0 and "A4" in out and "heights" in out
    code, out, _ = run(capsys, "render", "pyramid", "--n", "4", "--config", "+0+--0+-")
    assert "heights 0:000 1:001 1:001 2:010" in out
    code, _, err = run(capsys, "render", "pyramid", "--n", "2", "--config=-+00")
    assert code == 2 and "0 tilings" in err
    svg = tmp_path / "t.svg"
    assert run(capsys, "render", "pyramid", "--n", "1", "--all", "--format", "svg", "--out", str(svg))[0] == 0
    assert svg.read_text().count("<svg") == 2
