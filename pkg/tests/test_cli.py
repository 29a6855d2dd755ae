import csv
import json

import pytest

from dyckbaker.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--M", "2", "--n", "2",
                       "--class", "alpha", "--enumerate")
    assert code == 0
    assert json.loads(out) == {
        "M": 2, "n": 2, "class": "alpha", "closed_form": "4", "enumerated": "4",
    }


def test_count_writes_file_and_sidecar(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "count", "--M", "2", "--n", "6", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text())["closed_form"] == "1152"
    meta = json.loads((tmp_path / "c.json.meta.json").read_text())
    assert meta["tool"] == "dyckbaker" and meta["command"] == "count"
    assert meta["flags"]["M"] == "2"


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--M", "2", "--n", "1",
                       "--class", "alpha")
    assert code == 0
    assert out.splitlines() == ["word", "a1", "a2"]


def test_enumerate_budget_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", "--M", "2", "--n", "50",
                       "--budget", "1000")
    assert code == 3
    assert "resource limit" in err


def test_measure_csv_schema(tmp_path, capsys):
    out = tmp_path / "m.csv"
    code, _, _ = run(capsys, "measure", "--M", "2", "--n", "2,4",
                     "--class", "alpha", "--cyl-len", "1", "--out", str(out))
    assert code == 0
    with out.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "cylinder", "empirical", "exact", "abs_error"]
    assert len(rows) == 1 + 4 + 4
    assert {r[0] for r in rows[1:]} == {"2", "4"}
    assert (tmp_path / "m.csv.meta.json").exists()


def test_measure_json_union(capsys):
    code, out, _ = run(capsys, "measure", "--M", "2", "--n", "4",
                       "--class", "union", "--cyl-len", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["target"] == "mixture"
    assert payload[0]["sup_distance"] == "0"


def test_measure_rejects_bad_window(capsys):
    code, _, err = run(capsys, "measure", "--M", "2", "--n", "2",
                       "--class", "alpha", "--cyl-len", "5")
    assert code == 2
    assert "usage error" in err


def test_mme_value(capsys):
    code, out, _ = run(capsys, "mme", "--side", "alpha", "--word", "a1")
    assert (code, out.strip()) == (0, "1/3")
    code, out, _ = run(capsys, "mme", "--side", "mixture", "--word", "a1")
    assert out.strip() == "1/4"
    code, out, _ = run(capsys, "mme", "--side", "beta", "--word", "b2", "--M", "3")
    assert out.strip() == "1/4"


def test_mme_bad_word_is_usage_error(capsys):
    code, _, err = run(capsys, "mme", "--side", "alpha", "--word", "a9", "--M", "2")
    assert code == 2


def test_baker_solve_json(capsys):
    code, out, _ = run(capsys, "baker", "solve", "--M", "2", "--a", "1/5",
                       "--b", "1/5", "--word", "a1")
    assert code == 0
    sol = json.loads(out)
    assert sol["point"] == {"xu": "0", "xc": "0", "xs": "0"}
    assert sol["unstable_dim"] == 1
    assert sol["in_lambda"] is False
    assert sol["multipliers"]["xu"] == "5"


def test_baker_solve_rejects_float_params(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["baker", "solve", "--M", "2", "--a", "0.2", "--b", "1/5",
              "--word", "a1"])
    assert exc.value.code == 2


def test_baker_solve_nonhyperbolic_is_usage_error(capsys):
    code, _, err = run(capsys, "baker", "solve", "--M", "2", "--a", "1/5",
                       "--b", "1/5", "--word", "a1,b1")
    assert code == 2


def test_baker_scatter_csv(tmp_path, capsys):
    out = tmp_path / "pts.csv"
    code, _, err = run(capsys, "baker", "scatter", "--M", "2", "--a", "1/3",
                       "--periods", "4,5", "--class", "both", "--out", str(out))
    assert code == 0
    with out.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["period", "class", "xu", "xc"]
    assert {r[0] for r in rows[1:]} == {"4", "5"}
    assert {r[1] for r in rows[1:]} == {"alpha", "beta"}
    meta = json.loads((tmp_path / "pts.csv.meta.json").read_text())
    assert "boundary_excluded" in meta["flags"]


def test_baker_scatter_3d_and_threads_deterministic(tmp_path, capsys):
    one = tmp_path / "one.csv"
    two = tmp_path / "two.csv"
    for path, threads in ((one, "1"), (two, "2")):
        code, _, _ = run(capsys, "baker", "scatter", "--M", "2", "--a", "1/5",
                         "--b", "1/5", "--periods", "5", "--class", "alpha",
                         "--threads", threads, "--out", str(path))
        assert code == 0
    assert one.read_text() == two.read_text()
    header = one.read_text().splitlines()[0]
    assert header == "period,class,xu,xc,xs"


def test_verify_counts_suite(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code, _, err = run(capsys, "verify", "--suite", "counts", "--out", str(out))
    assert code == 0
    reports = json.loads(out.read_text())
    assert [r["check"] for r in reports] == ["count_exactness", "count_bounds"]
    assert all(r["status"] == "pass" for r in reports)
    assert "count_exactness: pass" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["count", "--M", "2"])  # missing --n
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--M", "2", "--n", "3", "--class", "gamma"])
    assert exc.value.code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
