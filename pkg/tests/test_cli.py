import json
import subprocess
import sys

import numpy as np
import pytest

from opmeans.cli import _dumps, main, parse_weight
from opmeans.matfun import matrix_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _write(tmp_path, name, m):
    m = np.asarray(m, dtype=float)
    p = tmp_path / name
    p.write_text(json.dumps({"dim": m.shape[0], "data": m.ravel().tolist()}))
    return str(p)


def test_scalar_examples(capsys):
    code, out, _ = run(capsys, "scalar", "--kind", "log", "--t", "0.2169", "706", "31.8")
    assert code == 0 and abs(float(out) - 431.8506) < 5e-4
    code, out, _ = run(capsys, "scalar", "--kind", "arith", "--t", "0.5", "1", "3")
    assert code == 0 and float(out) == 2.0
    code, out, _ = run(capsys, "--json", "scalar", "--kind", "stolarsky", "--r", "2", "1", "3")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "stolarsky" and d["value"] == pytest.approx(2.0, rel=1e-15)


def test_scalar_fraction_weight(capsys):
    _, out, _ = run(capsys, "scalar", "--kind", "geo", "--t", "1/3", "1", "8")
    assert float(out) == pytest.approx(2.0, rel=1e-15)


@pytest.mark.parametrize("argv", [
    ["scalar", "--kind", "log", "--t", "2", "1", "3"],
    ["scalar", "1", "-3"],
    ["scalar", "--kind", "stolarsky", "1", "3"],
    ["scalar", "--kind", "bogus", "1", "3"],
    ["search", "heronian", "--iters", "0"],
    ["verify", "chain", "--dims", "0"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, "--json", *argv)
    assert code == 2 and out == ""
    assert "error" in json.loads(err)


def test_matrix_examples(tmp_path, capsys):
    eye = _write(tmp_path, "i.json", np.eye(2))
    b = _write(tmp_path, "b.json", np.diag([4.0, 9.0]))
    code, out, _ = run(capsys, "--json", "matrix", "geo", "0.5", eye, b)
    assert code == 0
    m = matrix_from_json(json.loads(out))
    assert np.allclose(m, np.diag([2.0, 3.0]), rtol=1e-15)
    code, out, _ = run(capsys, "--json", "matrix", "log", "1/2", b, b)
    assert np.allclose(matrix_from_json(json.loads(out)), np.diag([4.0, 9.0]), rtol=1e-14)


def test_matrix_out_round_trip(tmp_path, capsys):
    a = _write(tmp_path, "a.json", [[2.0, 0.5], [0.5, 1.0]])
    b = _write(tmp_path, "b.json", [[1.0, -0.2], [-0.2, 3.0]])
    out_path = tmp_path / "m.json"
    code, _, _ = run(capsys, "matrix", "identric", "0.3", a, b, "--out", str(out_path))
    assert code == 0
    m = matrix_from_json(json.loads(out_path.read_text()))
    code, _, _ = run(capsys, "matrix", "geo", "0.5", str(out_path), str(out_path))
    assert code == 0 and m.shape == (2, 2)


def test_matrix_bad_input(tmp_path, capsys):
    good = _write(tmp_path, "g.json", np.eye(2))
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "data": [1, 0, 0, ]}')
    code, _, err = run(capsys, "matrix", "geo", "0.5", good, str(bad))
    assert code == 2 and "bad.json:2:" in err
    neg = _write(tmp_path, "n.json", np.diag([1.0, -1.0]))
    code, _, err = run(capsys, "matrix", "geo", "0.5", good, neg)
    assert code == 2 and "positive definite" in err
    three = _write(tmp_path, "t.json", np.eye(3))
    assert run(capsys, "matrix", "geo", "0.5", good, three)[0] == 2


def test_verify_chain_small(capsys):
    code, out, _ = run(capsys, "--json", "verify", "chain", "--dims", "2,4", "--trials", "5", "--seed", "42")
    d = json.loads(out)
    assert code == 0 and d["pass"] and d["config"]["dims"] == [2, 4]


def test_verify_monotone_square_exits_1(capsys):
    code, out, _ = run(capsys, "--json", "verify", "monotone", "--fn", "x2", "--order", "2", "--trials", "20")
    d = json.loads(out)
    assert code == 1 and not d["pass"]
    w = d["properties"]["monotone:x2"]["witness"]
    x1, x2 = w["points"]
    assert np.allclose(w["loewner_matrix"], [[2 * x1, x1 + x2], [x1 + x2, 2 * x2]])


def test_verify_invariance_exits_0(capsys):
    code, _, _ = run(capsys, "verify", "invariance", "--p", "0.5", "--q", "0.3333333333333333",
                     "--r", "0.6666666666666666", "--trials", "5")
    assert code == 0
    code, _, _ = run(capsys, "verify", "invariance", "--p", "1/2", "--q", "1/3", "--r", "1/3", "--trials", "5")
    assert code == 1


def test_verify_human_table(capsys):
    code, out, _ = run(capsys, "verify", "hh")
    assert code == 0 and "hh_refinement:exp" in out and "overall: PASS" in out


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"dims": [3], "trials": 2, "seed": 7, "json": True}))
    code, out, _ = run(capsys, "--config", str(cfg), "verify", "chain")
    d = json.loads(out)
    assert code == 0 and d["config"]["dims"] == [3] and d["config"]["seed"] == 7
    code, out, _ = run(capsys, "--config", str(cfg), "verify", "chain", "--seed", "9")
    assert json.loads(out)["config"]["seed"] == 9
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert run(capsys, "--config", str(bad), "verify", "chain")[0] == 2


def test_search(capsys):
    code, out, _ = run(capsys, "--json", "search", "heronian", "--seed", "5", "--iters", "200")
    d = json.loads(out)
    assert code == 0 and d["findings"][0]["probe"]
    assert d["findings"][0]["gap"] == pytest.approx(5.0004, abs=1e-3)
    code, out2, _ = run(capsys, "--json", "search", "heronian", "--seed", "5", "--iters", "200")
    assert out2 == out


def test_json_floats_have_17_digits():
    assert _dumps(0.1) == "0.10000000000000001"
    assert json.loads(_dumps({"a": [1.5, 2], "b": None, "c": float("nan")})) == {"a": [1.5, 2], "b": None, "c": None}


def test_parse_weight():
    assert parse_weight("1/3") == 1.0 / 3.0
    assert parse_weight("0.25") == 0.25
    for bad in ("2", "-1/3", "x", "1/0"):
        with pytest.raises(Exception):
            parse_weight(bad)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "opmeans", "scalar", "--kind", "arith", "1", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and float(res.stdout) == 2.0
