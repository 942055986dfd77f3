import json
import subprocess
import sys

import pytest

from ordinal_msp.cli import SEED_ENV, main


def _write(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg) if not isinstance(cfg, str) else cfg)
    return str(p)


TRANSVERSAL = {"id": "tr", "instance": {"generator": "random_bipartite", "n": 10, "n_left": 8, "edge_prob": 0.4},
               "engine": "transversal", "trials": 400}
LAMINAR = {"id": "lam", "instance": {"generator": "random_laminar", "n": 12}, "engine": "laminar", "trials": 400}


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)


def test_bounds_table(capsys):
    assert main(["bounds"]) == 0
    out = capsys.readouterr().out
    rows = {line.split()[0]: line for line in out.splitlines()}
    assert "2.71828" in rows["transversal"]
    assert "5.19615" in rows["laminar"]
    assert "6.34960" in rows["semiplanar"]


def test_empty_plan_list(tmp_path, capsys):
    out = tmp_path / "o"
    assert main(["run", _write(tmp_path, {"plans": []}), "--out", str(out)]) == 0
    assert (out / "summary.txt").read_text() == ""
    assert capsys.readouterr().out == ""


def test_run_writes_artifacts_and_bounds(tmp_path, capsys):
    out = tmp_path / "o"
    cfg = _write(tmp_path, {"seed": 3, "plans": [TRANSVERSAL, LAMINAR]})
    assert main(["run", cfg, "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["000_tr.csv", "000_tr.json", "001_lam.csv", "001_lam.json", "summary.txt"]
    table = (out / "summary.txt").read_text()
    assert table == capsys.readouterr().out
    tr = [line for line in table.splitlines() if line.startswith("transversal")]
    lam = [line for line in table.splitlines() if line.startswith("laminar")]
    assert len(tr) == 4 and all("2.71828" in line for line in tr)
    assert len(lam) == 4 and all("5.19615" in line for line in lam)


def test_csv_byte_identical_across_runs_and_widths(tmp_path):
    cfg = _write(tmp_path, {"seed": 5, "plans": [dict(TRANSVERSAL, trials=1300), LAMINAR]})
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert main(["run", cfg, "--out", str(a)]) == 0
    assert main(["run", cfg, "--out", str(b)]) == 0
    assert main(["run", cfg, "--out", str(c), "--width", "2"]) == 0
    for name in ("000_tr.csv", "001_lam.csv", "000_tr.json", "summary.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes() == (c / name).read_bytes()


def test_seed_precedence(tmp_path, monkeypatch):
    cfg = _write(tmp_path, {"seed": 5, "plans": [TRANSVERSAL]})
    main(["run", cfg, "--out", str(tmp_path / "cfg")])
    main(["run", cfg, "--out", str(tmp_path / "flag"), "--seed", "8"])
    monkeypatch.setenv(SEED_ENV, "8")
    main(["run", cfg, "--out", str(tmp_path / "env"), "--seed", "99"])
    read = lambda d: (tmp_path / d / "000_tr.csv").read_text()  # noqa: E731
    assert read("flag") == read("env")
    assert read("cfg") != read("flag")
    assert read("env").strip().split(",")[-1] == "8"


def test_bad_seed_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(SEED_ENV, "abc")
    assert main(["run", _write(tmp_path, {"plans": []})]) == 2
    assert SEED_ENV in capsys.readouterr().err


def test_instance_file_relative_to_config(tmp_path):
    sub = tmp_path / "cfgs"
    sub.mkdir()
    (sub / "u.json").write_text(json.dumps({"family": "uniform", "n": 5, "rank": 1}))
    cfg = _write(sub, {"plans": [{"id": "u", "instance": {"file": "u.json"}, "engine": "classical",
                                  "trials": 300}]})
    assert main(["run", cfg, "--out", str(tmp_path / "o")]) == 0


@pytest.mark.parametrize("cfg, needle", [
    ('{"plans": [\n  {"engine": "x",}\n]}', ":2:18: invalid JSON"),
    ({"plans": [{"instance": {"generator": "tpa", "rho": 2}, "engine": "nope", "trials": 1}]},
     "$.plans[0].engine"),
    ({"plans": [{"instance": {"generator": "tpa", "rho": 2}, "engine": "tpa", "trials": 0}]},
     "$.plans[0].trials"),
    ({"plans": [], "extra": 1}, "extra"),
    ({"plans": [{"instance": {"generator": "random_graphic", "n_vertices": 4}, "engine": "graphic", "trials": 5}]},
     "n_edges"),
    ({"plans": [{"instance": {"generator": "tpa", "rho": 2}, "engine": "graphic", "trials": 5}]},
     "does not support family"),
    ({"plans": [{"instance": {"family": "uniform", "n": 3, "rank": 1}, "engine": "tpa", "trials": 5,
                 "weights": [1, 2, 3]}]}, "non-increasing"),
    ({"plans": [{"instance": {"family": "uniform", "n": 3, "rank": 1}, "engine": "tpa", "trials": 5,
                 "weights": [1, 2]}]}, "expected 3 weights"),
    ({"plans": [{"instance": {"family": "uniform", "n": 3, "rank": 1}, "engine": "tpa", "trials": 5,
                 "weights": "tpa"}]}, "2 rho^3"),
    ({"plans": [{"instance": {"file": "missing.json"}, "engine": "tpa", "trials": 5}]}, "no such file"),
])
def test_config_errors_exit_2(tmp_path, capsys, cfg, needle):
    assert main(["run", _write(tmp_path, cfg), "--out", str(tmp_path / "o")]) == 2
    err = capsys.readouterr().err
    assert err.startswith("config error:") and needle in err
    assert not (tmp_path / "o").exists()


def test_missing_config_exit_2(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.json")]) == 2


@pytest.mark.parametrize("instance, engine", [
    ({"family": "uniform", "n": 3, "rank": 5}, "classical"),
    ({"family": "laminar", "n": 3, "laminar_sets": [[0, 1], [1, 2]], "caps": [1, 1]}, "laminar"),
    ({"family": "gammoid", "n_nodes": 2, "digraph_arcs": [[0, 1]], "sources": [0], "terminals": [1]}, "gammoid"),
])
def test_invariant_violations_exit_3(tmp_path, capsys, instance, engine):
    cfg = _write(tmp_path, {"plans": [{"instance": instance, "engine": engine, "trials": 5}]})
    assert main(["run", cfg, "--out", str(tmp_path / "o")]) == 3
    assert "invariant violation" in capsys.readouterr().err


def test_failing_bound_exit_4(tmp_path, capsys):
    # the rank-one rule on a rank-three instance misses most of OPT
    cfg = _write(tmp_path, {"plans": [{"id": "bad", "instance": {"generator": "uniform", "n": 6, "rank": 3},
                                       "engine": "classical", "trials": 500}]})
    assert main(["run", cfg, "--out", str(tmp_path / "o")]) == 4
    assert "FAIL" in capsys.readouterr().out


def test_verify_quick_passes(capsys):
    assert main(["verify", "--level", "quick"]) == 0
    assert capsys.readouterr().out.splitlines()[-1].startswith("PASS: 0 failing checks")


def test_verify_injected_mutant_fails(capsys):
    assert main(["verify", "--inject", "history-matching"]) == 4
    out = capsys.readouterr().out
    assert "transversal[history-matching]" in out
    assert "counterexample implication: order=[" in out


def test_verify_unknown_mutant(capsys):
    assert main(["verify", "--inject", "bogus"]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ordinal_msp", "bounds"], capture_output=True, text=True)
    assert res.returncode == 0 and "3*sqrt(3)" in res.stdout
