import json
import subprocess
import sys

import pytest

from gammapres.cli import main

Z3INV = {"group": {"named": "cyclic", "args": [3]}, "gamma": {"named": "cyclic", "args": [2]},
         "action": [[0, 2, 1]]}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_genprob_prints_8_9(files, capsys):
    f = files("f.json", Z3INV)
    code, out, _ = run(["genprob", "--gamma-group", f, "--relations", "2", "--no-cache"], capsys)
    assert code == 0 and out.strip() == "8/9"


def test_genprob_from_decomposition(files, capsys):
    d = files("d.json", {"factors": [{"multiplicity": 2, "abelian": True, "y_size": 3, "prime": 3,
                                      "h": 1, "dim": 1}]})
    code, out, _ = run(["genprob", "--decomp", d, "--relations", "3", "--no-cache"], capsys)
    assert code == 0 and out.strip() == "208/243"


def test_malformed_group_json_exit_2(files, capsys):
    bad = files("bad.json", "{not json")
    code, _, err = run(["height", "--group", bad], capsys)
    assert code == 2 and "invalid JSON" in err
    wrong = files("wrong.json", {"nope": 1})
    code, _, err = run(["height", "--group", wrong], capsys)
    assert code == 2 and "schema" in err


def test_bad_module_shape_exit_2(files, capsys):
    g = files("g.json", {"named": "cyclic", "args": [4]})
    m = files("m.json", {"prime": 2, "matrices": [[[1]], [[1]]]})
    code, _, err = run(["cohom", "--group", g, "--module", m, "--degree", "1"], capsys)
    assert code == 2


def test_usage_error_exit_2():
    proc = subprocess.run([sys.executable, "-m", "gammapres", "frobnicate"], capture_output=True)
    assert proc.returncode == 2


def test_capacity_exit_3(files, capsys):
    g = files("g.json", {"named": "symmetric", "args": [5]})
    m = files("m.json", {"prime": 2, "character": [1, 1]})
    cfg = files("cfg.json", {"h2_order_cap": 24})
    code, _, err = run(["cohom", "--group", g, "--module", m, "--degree", "2", "--config", cfg], capsys)
    assert code == 3 and "capacity" in err


def test_cohom_report(files, capsys):
    g = files("g.json", {"named": "cyclic", "args": [4]})
    m = files("m.json", {"prime": 2, "character": [1]})
    code, out, _ = run(["cohom", "--group", g, "--module", m, "--degree", "2", "--no-cache"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["dim_cohomology"] == 1 and rep["provenance"] == "computed"


def test_mult_report(files, capsys):
    h = files("h.json", Z3INV)
    a = files("a.json", {"prime": 3, "character": [1, 2]})
    cover = {"source": {"group": {"named": "elementary_abelian", "args": [3, 2]},
                        "gamma": {"named": "cyclic", "args": [2]},
                        "action": [[0, 2, 1, 6, 8, 7, 3, 5, 4]]},
             "target": Z3INV, "map": [0, 1, 2, 0, 1, 2, 0, 1, 2]}
    c = files("c.json", cover)
    code, out, err = run(["mult", "--n", "1", "--gamma", h, "--module", a, "--oracle", c, "--no-cache"],
                         capsys)
    assert code == 0, err
    row = json.loads(out)["rows"][0]
    assert row["m_formula"]["value"] == 1 and row["m_oracle"]["value"] == 1


def test_formula(files, capsys):
    d = files("d.json", {"ell": 5, "dim_a": 2, "r1": 1, "eps": 2, "real_place_fixed_dims": [0]})
    code, out, _ = run(["formula", "--op", "mult_bound_other_signatures", "--data", d, "--n", "2",
                        "--no-cache"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["value"] == "4/1" and rep["provenance"] == "evaluator-input"
    code, _, _ = run(["formula", "--op", "nope", "--data", d], capsys)
    assert code == 2


def test_sample_is_byte_identical(files, capsys, tmp_path):
    f = files("f.json", Z3INV)
    outs = []
    for i in range(2):
        p = tmp_path / f"h{i}.json"
        code, _, _ = run(["sample", "--gamma-group", f, "--relations", "2", "--draws", "5000",
                          "--seed", "5", "--out", str(p), "--no-cache"], capsys)
        assert code == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert sum(b["count"] for b in json.loads(outs[0])["buckets"]) == 5000


def test_cache_hits_do_not_change_results(files, capsys, tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv("GAMMAPRES_CACHE_DIR", str(cache))
    h = files("h.json", {"group": {"named": "symmetric", "args": [4]}})
    c = files("c.json", {"members": [{"group": {"named": "symmetric", "args": [3]}}]})
    argv = ["proc", "--gamma", h, "--variety", c]
    first = run(argv, capsys)
    assert len(list(cache.iterdir())) == 1
    second = run(argv, capsys)
    fresh = run(argv + ["--no-cache"], capsys)
    assert first == second == fresh
    assert json.loads(first[1])["completion_order"] == 6


def test_relator_rank_and_height(files, capsys):
    h = files("h.json", {"group": {"named": "elementary_abelian", "args": [3, 2]}})
    code, out, _ = run(["relator-rank", "--n", "2", "--gamma", h, "--no-cache"], capsys)
    assert code == 0 and json.loads(out)["value"] == 3
    g = files("g.json", {"named": "symmetric", "args": [4]})
    code, out, _ = run(["height", "--group", g, "--hat", "--format", "tsv", "--no-cache"], capsys)
    assert code == 0 and "h\t3" in out and "hhat\t3" in out


def test_selftest_subset_exit_codes(capsys):
    code, _, err = run(["selftest", "--only", "1,10"], capsys)
    assert code == 0 and err.count("PASS") == 2
