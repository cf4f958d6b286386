import json

import pytest

from ribbonmcg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_graph_new_faces_genus_standardize(tmp_path, capsys):
    f = tmp_path / "g.json"
    assert run(capsys, "graph", "new", "--genus", "2", "--boundaries", "1", "--out", str(f))[0] == 0
    code, out, _ = run(capsys, "graph", "faces", str(f))
    assert code == 0 and json.loads(out)["count"] == 2
    code, out, _ = run(capsys, "graph", "genus", str(f))
    assert json.loads(out)["genus"] == 2
    code, out, _ = run(capsys, "graph", "standardize", str(f))
    d = json.loads(out)
    assert d["slides"] == 0 and d["cilium_crossings"] == 0


def test_standardize_random_graph(tmp_path, capsys):
    import random
    from ribbonmcg.standard_form import random_admissible
    f = tmp_path / "r.json"
    f.write_text(random_admissible(1, 1, random.Random(2)).dumps())
    out = tmp_path / "s.json"
    assert run(capsys, "graph", "standardize", str(f), "--out", str(out))[0] == 0
    d = json.loads(out.read_text())
    assert d["cilium_crossings"] == 0 and d["genus"] == 1


def test_graph_new_torus(capsys):
    code, out, _ = run(capsys, "graph", "new", "--torus")
    assert json.loads(out)["vertices"][0]["order"] == ["a.s", "b.s", "a.t", "b.t"]


def test_act_torus_group_state(capsys):
    code, out, _ = run(capsys, "act", "--torus", "--script", "D_b", "--group", "S3", "--state", "r,s")
    d = json.loads(out)
    assert code == 0 and d["state"] == ["sr", "s"] and d["relabeling"]["a"] == "b a"


def test_act_empty_script_echoes(capsys):
    _, out, _ = run(capsys, "act", "--torus", "--group", "S3", "--state", "r,s")
    assert json.loads(out)["state"] == ["r", "s"]


def test_act_genus2_table_row(capsys):
    _, out, _ = run(capsys, "act", "--genus", "2", "--script", "D_{δ₀}")
    assert json.loads(out)["relabeling"] == {"a1": "a1", "a2": "b2 a2", "b1": "b1", "b2": "b2"}


def test_act_script_file_and_slides(tmp_path, capsys):
    s = tmp_path / "s.txt"
    s.write_text("slide L b ta(a)\nslide -L b\n")
    _, out, _ = run(capsys, "act", "--torus", "--script-file", str(s))
    d = json.loads(out)
    assert d["relabeling"] == {"a": "a", "b": "b"} and d["slides"] == 2


def test_act_edits(tmp_path, capsys):
    g = tmp_path / "g.json"
    run(capsys, "graph", "new", "--torus", "--out", str(g))
    _, out, _ = run(capsys, "act", "--graph", str(g), "--script", "add-edge c a; remove a; reverse b; vertex-face x")
    d = json.loads(out)
    assert sorted(d["relabeling"]) == ["b", "c"]


def test_act_linear_state(capsys):
    _, out, _ = run(capsys, "act", "--torus", "--script", "D_b", "--backend", "linear", "--state", "g,g")
    # a -> b a = g g = 1 in the Sweedler algebra
    assert json.loads(out)["state"] == {"1 g": "1"}


def test_act_errors(capsys):
    assert run(capsys, "act", "--torus", "--script", "D_q")[0] == 2
    with pytest.raises(SystemExit):
        main(["act", "--torus", "--group", "S3", "--state", "r"])


def test_verify_writes_report(tmp_path, capsys):
    f = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "gervais", "--genus", "2", "--boundaries", "1", "--backend", "symbolic",
                       "--out", str(f))
    assert code == 0 and "as expected" in out
    d = json.loads(f.read_text())
    assert d["ok"] and d["info"]["genus"] == 2


def test_verify_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        run(capsys, "verify", "bene", "--no-timings", "--out", str(f))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [
    ["verify", "hopf"], ["verify", "bene", "--backend", "linear"], ["verify", "torus"],
    ["verify", "lemmas"], ["verify", "closed", "--genus", "2", "--group", "S3", "--pivot", "e"],
    ["verify", "closed", "--genus", "1", "--backend", "linear", "--hopf", "sweedler4"],
    ["verify", "equivariance", "--genus", "1", "--boundaries", "1"],
    ["verify", "equivariance", "--genus", "1", "--boundaries", "1", "--backend", "linear", "--hopf", "Z2"],
    ["verify", "gervais", "--genus", "1", "--boundaries", "1", "--group", "D4", "--pivot", "r2"],
])
def test_verify_suites_pass(capsys, argv):
    assert run(capsys, *argv)[0] == 0


def test_verify_genus_zero_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "gervais", "--genus", "0", "--boundaries", "2"])
    assert exc.value.code == 2


def test_verify_pivot_gate(capsys):
    code, _, err = run(capsys, "verify", "closed", "--genus", "2", "--group", "Z3", "--pivot", "g")
    assert code == 2 and "p*p" in err


def test_biinv(capsys):
    _, out, _ = run(capsys, "biinv", "--group", "Z2", "--genus", "1")
    d = json.loads(out)
    assert (d["coinvariants"], d["orbits"]) == (4, 4)
    _, out, _ = run(capsys, "biinv", "--group", "S3", "--genus", "2")
    d = json.loads(out)
    assert d["coinvariants"] == 486 == d["class_function_count"]
    assert all(sorted(p) == list(range(d["orbits"])) for p in d["generators"].values())


def test_biinv_bad_pivot(capsys):
    code, _, err = run(capsys, "biinv", "--group", "S3", "--genus", "2", "--pivot", "r")
    assert code == 2 and "not a central element" in err


def test_biinv_budget(capsys):
    code, _, err = run(capsys, "biinv", "--group", "S3", "--genus", "2", "--max-states", "1000")
    assert code == 2 and "budget" in err
