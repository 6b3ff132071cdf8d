from __future__ import annotations

import csv
import json
import subprocess
import sys

import pytest

from scindex.cli import main
from scindex.io import read_records

EX2 = [11, 7, 6, 6, 6, 4, 4, 4, 3, 3, 2, 2, 1, 1, 1]


@pytest.fixture
def corpus(tmp_path):
    p = tmp_path / "records.jsonl"
    rows = [{"id": "ex2", "citations": EX2}, {"id": "r2", "citations": [8, 6, 2]},
            {"id": "r3", "citations": [0, 3, 5]}]
    p.write_text("".join(json.dumps(r) + "\n" for r in rows))
    return p


def _csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_index_row_for_example(corpus, tmp_path):
    out = tmp_path / "out.csv"
    assert main(["index", "--in", str(corpus), "--out", str(out)]) == 0
    row = _csv(out)[0]
    assert row["id"] == "ex2"
    assert (row["h"], row["w"], row["hprime_sq"]) == ("5.00000000", "8.00000000", "32")
    assert (row["c"], row["c_radicand"], row["c_degree"]) == ("6.32455532", "40", "2")
    assert row["wprime_radicand"] == "1849/21"


def test_empty_file_gives_header_only(tmp_path):
    src = tmp_path / "empty.jsonl"
    src.write_text("")
    out = tmp_path / "out.csv"
    assert main(["index", "--in", str(src), "--indices", "h,hprime", "--out", str(out)]) == 0
    assert out.read_text() == "id,h,h_radicand,h_degree,hprime,hprime_radicand,hprime_degree,hprime_sq\n"


@pytest.mark.parametrize("body, fragment", [
    ('{"id": "a", "citations": [1, 2]}\n{"id": "b", "citations": [1, -3]}\n', ":2:"),
    ('{"id": "a", "citations": [1.5]}\n', ":1:"),
    ('{"id": "a", "citations": [1]}\n\nnot json\n', ":3:"),
])
def test_malformed_input_exit_2_with_line(tmp_path, capsys, body, fragment):
    src = tmp_path / "bad.jsonl"
    src.write_text(body)
    out = tmp_path / "out.csv"
    assert main(["index", "--in", str(src), "--out", str(out)]) == 2
    assert fragment in capsys.readouterr().err
    assert not out.exists()


def test_csv_input(tmp_path):
    src = tmp_path / "r.csv"
    src.write_text("id,c1,c2,c3\nx,3,3,\ny,4,x,1\n")
    with pytest.raises(Exception) as err:
        read_records(src)
    assert ":3:" in str(err.value)


def test_unknown_index_lists_valid_names(corpus, capsys):
    assert main(["index", "--in", str(corpus), "--indices", "h,zz"]) == 2
    err = capsys.readouterr().err
    assert "zz" in err and "hprime" in err


def test_missing_input_exit_2(tmp_path):
    assert main(["index", "--in", str(tmp_path / "nope.jsonl")]) == 2


def test_dual_and_scale_round_trip(corpus, tmp_path):
    once, twice = tmp_path / "d1.jsonl", tmp_path / "d2.jsonl"
    assert main(["dual", "--in", str(corpus), "--out", str(once)]) == 0
    assert main(["dual", "--in", str(once), "--out", str(twice)]) == 0
    assert read_records(twice) == read_records(corpus)
    scaled = tmp_path / "s.jsonl"
    assert main(["scale", "--in", str(corpus), "--k", "2", "--m", "3", "--out", str(scaled)]) == 0
    rows = dict(read_records(scaled))
    assert rows["r2"].entries == (16, 16, 16, 12, 12, 12, 4, 4, 4)
    assert main(["scale", "--in", str(corpus), "--k", "0"]) == 2


def test_axioms_wprime_exit_1_with_witness(capsys, tmp_path):
    out = tmp_path / "ax.json"
    assert main(["axioms", "--index", "wprime", "--out", str(out)]) == 1
    assert "[4, 4]" in capsys.readouterr().out
    rep = json.loads(out.read_text())
    assert rep["schema_version"] == 1
    maxb = [r for r in rep["reports"] if r["axiom"] == "MaxB"][0]
    assert maxb["witness"] == {"x": [4, 4], "y": [2, 2, 2, 2]}


def test_axioms_hprime_clean():
    assert main(["axioms", "--index", "hprime", "--L", "4", "--M", "4", "--lgr"]) == 0


def test_trajectory(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["trajectory", "--p", "1", "--c", "1", "--years", "4", "--out", str(out)]) == 0
    rows = _csv(out)
    assert [r["wprime"] for r in rows] == ["1.00000000", "2.00000000", "3.00000000", "4.00000000"]
    assert main(["trajectory", "--p", "1", "--c", "1"]) == 2


def test_simulate_and_choice(tmp_path):
    out, table = tmp_path / "s.json", tmp_path / "t.csv"
    args = ["simulate", "--p", "0.2", "--c", "0.2", "--careers", "8", "--months", "36", "--paired",
            "--out", str(out), "--table", str(table)]
    assert main(args) == 0
    rep = json.loads(out.read_text())
    assert rep["schema_version"] == 1 and set(rep["stats"]) == {"h", "hprime", "w", "wprime"}
    assert table.read_text().startswith("p,c,index")
    assert main(["choice", "--exhaustive", "3", "--bargraph", "3", "--out", str(tmp_path / "c.json")]) == 0


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# campaign\np = 0.2\nc = 0.2\ncareers = 6\nmonths = 24\nseed = 9\npaired = true\n")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["simulate", "--config", str(cfg), "--out", str(a)]) == 0
    ra = json.loads(a.read_text())
    assert ra["config"]["careers"] == 6 and ra["config"]["paired"] is True
    assert main(["simulate", "--config", str(cfg), "--careers", "4", "--out", str(b)]) == 0
    assert json.loads(b.read_text())["config"]["careers"] == 4
    cfg.write_text("bogus = 1\n")
    assert main(["simulate", "--config", str(cfg), "--p", "1", "--c", "1"]) == 2


@pytest.mark.parametrize("argv", [
    ["index"],
    ["simulate", "--p", "0.125", "--c", "0.32", "--careers", "10", "--months", "48", "--paired"],
    ["axioms", "--matrix", "--L", "4", "--M", "4"],
])
def test_reruns_are_byte_identical(corpus, tmp_path, argv):
    if argv[0] == "index":
        argv = argv + ["--in", str(corpus)]
    first, second = tmp_path / "1.out", tmp_path / "2.out"
    main(argv + ["--out", str(first)])
    main(argv + ["--out", str(second)])
    assert first.read_bytes() == second.read_bytes()


def test_console_script_entry_point(corpus):
    res = subprocess.run([sys.executable, "-m", "scindex.cli", "index", "--in", str(corpus), "--indices", "h"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1] == "ex2,5.00000000,5,1"
