import csv
import io
import json
import subprocess
import sys

import pytest

from sqfull import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def table(text):
    return list(csv.reader(io.StringIO("".join(l + "\n" for l in text.splitlines() if not l.startswith("#")))))


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--b", "10000", "--sweep", "--unordered")
    assert code == 0
    rows = table(out)
    assert rows[0] == ["B", "n", "n/sqrt(B)", "unordered"]
    assert [r[0] for r in rows[1:]] == ["100", "1000", "10000"]
    assert "# command = count" in out and "# b = 10000" in out
    assert "threads" not in out


def test_count_primitive(capsys):
    code, out, _ = run(capsys, "count", "--b", "100000", "--primitive")
    assert table(out)[1][:2] == ["100000", "554"]


def test_cubic_json(capsys):
    code, out, _ = run(capsys, "cubic", "--b", "20", "--coeffs", "1,1,-1")
    d = json.loads(out)
    assert d["result"]["count"] == 6 and d["result"]["M"] == -12
    assert d["header"]["config"]["command"] == "cubic"


def test_normalized_and_boxes(capsys):
    code, out, _ = run(capsys, "normalized", "--b", "1000", "--coeffs", "1,1,-1")
    rows = table(out)
    assert rows[0] == ["x1", "x2", "x3", "y1", "y2", "y3"] and len(rows) > 1
    code, out, _ = run(capsys, "boxes", "--b", "1000", "--coeffs", "1,1,-1", "--format", "csv")
    assert code == 0 and len(table(out)) > 1


def test_cover_json(capsys):
    code, out, _ = run(capsys, "cover", "--b", "3000", "--coeffs", "1,1,-1")
    assert code == 0
    r = json.loads(out)["result"]
    assert r["ok"] and r["covered"] == r["points"]


def test_cover_csv_refused(capsys):
    code, _, err = run(capsys, "cover", "--b", "3000", "--format", "csv")
    assert code == 2 and "json" in err


def test_sieve(capsys):
    code, out, _ = run(capsys, "sieve", "--form", "1,0,0,0,0,2", "--p", "30", "--u", "16", "--format", "json")
    r = json.loads(out)["result"]
    assert all(row["ok"] for row in r["weil"])
    assert [m["U"] for m in r["mu0"]] == [4, 8, 16]


def test_config_file_and_flags(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# counts\nb = 1000\nprimitive = true\n")
    code, out, _ = run(capsys, "count", "--config", str(cfg))
    assert table(out)[0][1] == "n_prim" and table(out)[1][0] == "1000"
    code, out, _ = run(capsys, "count", "--config", str(cfg), "--b", "500")
    assert table(out)[1][0] == "500"


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "count", "--config", str(cfg))
    assert code == 2 and "colour" in err
    code, _, _ = run(capsys, "count", "--config", str(tmp_path / "missing.cfg"))
    assert code == 2


def test_env_threads(monkeypatch):
    monkeypatch.setenv("SQFULL_THREADS", "3")
    args = cli.build_parser().parse_args(["count"])
    assert cli.make_config(args).threads == 3
    args = cli.build_parser().parse_args(["count", "--threads", "2"])
    assert cli.make_config(args).threads == 2


def test_invalid_flags():
    with pytest.raises(SystemExit) as e:
        cli.main(["count", "--nope"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["frobnicate"])
    assert e.value.code == 2


def test_b_refused(capsys):
    code, _, err = run(capsys, "count", "--b", str(2**60 + 1))
    assert code == 2 and "exceeds 2^60" in err


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "r.csv"
    code, out, _ = run(capsys, "count", "--b", "1000", "--out", str(dest))
    assert code == 0 and out == ""
    assert table(dest.read_text())[1][0] == "1000"


def test_verify_deterministic(capsys, monkeypatch):
    outs = []
    for t in ("1", "4"):
        code, out, _ = run(capsys, "verify", "--seed", "7", "--threads", t, "--format", "json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["result"]["passed"]


def test_entry_point():
    r = subprocess.run([sys.executable, "-m", "sqfull.cli", "cubic", "--b", "5", "--coeffs", "1,1,-2"],
                       capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["result"]["count"] == 4
