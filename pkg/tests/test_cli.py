import json
import subprocess
import sys

import pytest

from lattrans.cli import run
from lattrans.constructions import L_dprime, order4_representatives
from lattrans.core import render_array


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "cyclic": "a b c\nb c a\nc a b\n",
        "l2": "a b\nb a\n",
        "ldprime": render_array(L_dprime()),
        "order4": render_array(order4_representatives()[0]),
        "empty": "",
        "bad": "a b\nc\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_check_exit_codes(files, capsys):
    assert call(capsys, "check", files["cyclic"])[0] == 0
    code, out = call(capsys, "check", files["l2"])
    assert code == 1 and "no transversal" in out
    assert call(capsys, "check", files["empty"])[0] == 2
    assert call(capsys, "check", files["bad"])[0] == 2
    assert call(capsys, "check", "/no/such/file")[0] == 2
    assert call(capsys, "nonsense")[0] == 2
    assert call(capsys, "check")[0] == 2


def test_json_outputs(files, capsys):
    code, out = call(capsys, "count", files["cyclic"], "--json")
    assert code == 0 and json.loads(out) == {"count": 3}
    code, out = call(capsys, "maxpt", files["ldprime"], "--json")
    assert json.loads(out)["length"] == 5
    code, out = call(capsys, "check", files["cyclic"], "--json", "--dynamic")
    obj = json.loads(out)
    assert obj["transversal"] and len(obj["witness"]) == 3


def test_canon_and_dedupe(files, capsys):
    code, out = call(capsys, "canon", files["l2"], files["l2"])
    assert code == 0 and out.split() == ["n=2;0,1,1,0"] * 2
    code, out = call(capsys, "dedupe", files["l2"], files["cyclic"], files["l2"], "--json")
    obj = json.loads(out)
    assert obj["input"] == 3 and obj["classes"] == 2


def test_ell_and_table1_against_directory(tmp_path, capsys):
    d = tmp_path / "cat"
    code, out = call(capsys, "ell", "--order", 5, "--from", d, "--build")
    assert code == 0 and out.strip() == "7"
    assert (d / "latin-5.jsonl").exists()
    code, out = call(capsys, "ell", "--order", 5, "--from", d)
    assert out.strip() == "7"
    code, out = call(capsys, "table1", "--upto", 5, "--from", d, "--build", "--json")
    rows = json.loads(out)["rows"]
    assert [(r["n"], r["ell"], r["total"]) for r in rows] == [(2, 3, 1), (3, 3, 0), (4, 6, 2), (5, 7, 2)]
    assert call(capsys, "ell", "--order", 4)[0] == 2


def test_table1_incomplete_exit(tmp_path, capsys):
    code, out = call(capsys, "table1", "--upto", 3, "--from", tmp_path)
    assert code == 1 and "incomplete" in out


def test_table2_zero_holes(tmp_path, capsys):
    code, out = call(capsys, "table2", "--holes", 0, "--build", "--json")
    assert code == 0 and json.loads(out)["rows"] == {"0": {"6": 2}}
    assert call(capsys, "table2", "--holes", "x", "--build")[0] == 2
    assert call(capsys, "table2", "--holes", 0)[0] == 2


def test_catalogue_and_extend(tmp_path, capsys):
    seeds = tmp_path / "p3.jsonl"
    code, out = call(capsys, "catalogue", "--order", 3, "--out", seeds)
    assert code == 0 and out.startswith("55 classes")
    code, out = call(capsys, "extend", "--from", seeds, "--json")
    obj = json.loads(out)
    assert obj["order"] == 5 and obj["classes"] == 2 and obj["complete"]
    assert call(capsys, "extend", "--from", seeds, "--order", 6)[0] == 2
    ck = tmp_path / "ck"
    for a in range(2):
        assert call(capsys, "extend", "--from", seeds, "--checkpoint", ck, "--shard", f"{a}/2")[0] == 0
    code, out = call(capsys, "extend", "--merge", 2, "--checkpoint", ck, "--order", 5, "--json")
    assert json.loads(out)["classes"] == 2 and json.loads(out)["complete"]
    assert call(capsys, "extend", "--from", seeds, "--shard", "3/2")[0] == 2


def test_constructions(tmp_path, capsys):
    code, out = call(capsys, "constructions", "--out", tmp_path / "L", "--json")
    arrays = json.loads(out)["arrays"]
    assert len(arrays) == 19 and all(a["transversals"] == 0 and a["symbols"] == 7 for a in arrays)
    assert len(list((tmp_path / "L").iterdir())) == 19


def test_delta_verify(files, tmp_path, capsys):
    assert call(capsys, "delta-verify", files["ldprime"])[0] == 0
    assert call(capsys, "delta-verify", files["order4"])[0] == 2
    c = tmp_path / "cert.json"
    c.write_text(json.dumps({"rows1": [0, 1, 2], "cols1": [0, 1, 2], "sym1": ["a", "b", "c"],
                             "rho_rows": [0] * 6, "rho_cols": [0] * 6,
                             "nu": {"a": 0, "b": 1, "c": 2, "d": 0, "e": 0, "f": 0, "g": 0}}))
    assert call(capsys, "delta-verify", files["ldprime"], "--certificate", c)[0] == 1
    c.write_text("{}")
    assert call(capsys, "delta-verify", files["ldprime"], "--certificate", c)[0] == 2


def test_bounds(capsys):
    code, out = call(capsys, "bounds", "--order", 10, "--symbols", 59)
    assert code == 0 and "fires" in out
    code, out = call(capsys, "bounds", "--order", 6, "--symbols", 9, "--json")
    assert code == 1 and json.loads(out)["thresholds"]["latin-2-sqrt2"] == 22
    assert call(capsys, "bounds", "--order", 6, "--symbols", 3)[0] == 2


def test_lll(files, capsys):
    code, out = call(capsys, "lll", files["ldprime"], "--json", "--search", "--restarts", 5, "--seed", 3)
    obj = json.loads(out)
    assert code == 1 and obj["x"] == f"1/{4 * obj['kappa']}" and not obj["search"]["found"]
    assert call(capsys, "lll", files["bad"])[0] == 2


def test_sample_deterministic(capsys):
    a = call(capsys, "sample", "--order", 5, "--symbols", 8, "--seed", 4)[1]
    b = call(capsys, "sample", "--order", 5, "--symbols", 8, "--seed", 4)[1]
    assert a == b
    assert call(capsys, "sample", "--order", 3, "--symbols", 20)[0] == 2


def test_module_entry_point(files):
    out = subprocess.run([sys.executable, "-m", "lattrans", "count", files["cyclic"]], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "3"
