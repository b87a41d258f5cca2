import json

import pytest

from kroman import cli
from kroman.construct import linear_c5
from kroman.grid import Grid
from kroman.verify import Labeling


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert cli.parse_range("4..6") == [4, 5, 6]
    assert cli.parse_range("1..2,12..13") == [1, 2, 12, 13]
    assert cli.parse_range("7") == [7]
    for bad in ("6..4", "", "x..3"):
        with pytest.raises(cli.UsageError):
            cli.parse_range(bad)


def test_verify_pattern(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(linear_c5(8, 2).to_json())
    code, out, _ = run(capsys, "verify", str(f))
    doc = json.loads(out)
    assert code == 0 and doc["valid"] and doc["weight"] == 28


def test_verify_all_zero(tmp_path, capsys):
    f = tmp_path / "z.json"
    f.write_text(Labeling.zeros(Grid(5, 8), 2).to_json())
    code, out, _ = run(capsys, "verify", str(f))
    assert code == 1 and len(json.loads(out)["violations"]) == 40
    code, out, _ = run(capsys, "verify", str(f), "--format", "text")
    assert code == 1 and "INVALID" in out


def test_verify_truncated(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text(linear_c5(8, 2).to_json()[:-10])
    code, _, err = run(capsys, "verify", str(f))
    assert code == 2 and "invalid JSON" in err


def test_construct_pattern(capsys):
    code, out, _ = run(capsys, "construct", "linear_c5", "5", "8", "2")
    assert code == 0 and Labeling.from_json(out) == linear_c5(8, 2)


def test_construct_flags_and_ascii(capsys):
    code, out, _ = run(capsys, "construct", "--family", "uniform", "--m", "9", "--n", "5", "--k", "7")
    doc = json.loads(out)
    assert code == 0 and all(x == 3 for row in doc["labels"] for x in row)
    code, out, _ = run(capsys, "construct", "mod5", "16", "7", "2", "--format", "ascii")
    assert code == 0 and "C_16 x P_7" in out


def test_construct_render_file(tmp_path, capsys):
    svg = tmp_path / "c.svg"
    code, _, _ = run(capsys, "construct", "linear_c9", "9", "6", "3", "--render", str(svg))
    assert code == 0 and svg.read_bytes().startswith(b"<?xml")


def test_construct_errors(capsys):
    assert run(capsys, "construct", "linear_c5", "7", "8", "2")[0] == 2
    # zero boundary slack: the refinement is not a [k]-RDF
    code, _, err = run(capsys, "construct", "packing", "9", "7", "5")
    assert code == 1 and "boundary slack" in err


def test_bound_csv_and_json(capsys):
    code, out, _ = run(capsys, "bound", "--m", "9", "--n", "100", "--k", "26")
    assert code == 0
    rows = {line.split(",")[3]: line.split(",")[4] for line in out.splitlines()[1:]}
    assert rows["LinearC9"] == "5452" and rows["UniformC9"] == "5436"
    code, out, _ = run(capsys, "bound", "--m", "16", "--n", "7", "--k", "2", "--format", "json", "--family", "Mod5")
    assert json.loads(out)[0]["value"] == "83"


def test_region(capsys, tmp_path):
    code, out, _ = run(capsys, "region", "--m", "9", "--n", "4..20", "--k", "1..2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1 + 34
    assert all(line.split(",")[7] == "linear" for line in lines[1:])
    chart = tmp_path / "r.svg"
    code, out, _ = run(capsys, "region", "--n", "4..8", "--k", "35..37", "--format", "ascii", "--chart", str(chart))
    assert code == 0 and chart.exists() and out.splitlines()[0].startswith("37 ")
    assert run(capsys, "region", "--m", "9", "--n", "5..4", "--k", "1")[0] == 2


def test_region_regime(capsys):
    code, out, _ = run(capsys, "region", "--k", "36..38", "--regime", "--horizon", "500")
    assert code == 0 and "# 38,packing,linear" in out


def test_compare_dr(capsys):
    code, out, _ = run(capsys, "compare-dr", "--m", "16", "--n", "4..12", "--audit")
    outcomes = [line.split(",")[5] for line in out.splitlines()[1:] if not line.startswith("#")]
    assert outcomes == ["MultipleSmaller"] * 3 + ["ResidueSmaller"] * 6
    assert out.rstrip().endswith("mismatches: 0")
    _, out, _ = run(capsys, "compare-dr", "--m", "9,14", "--n", "4..12")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert {r[5] for r in rows if r[0] == "9"} == {"Equal"}
    assert {r[5] for r in rows if r[0] == "14"} == {"ResidueSmaller"}


def test_exact(capsys, tmp_path):
    code, out, _ = run(capsys, "exact", "packing", "9", "4")
    assert code == 0 and json.loads(out)["value"] == 7
    w = tmp_path / "w.json"
    code, out, _ = run(capsys, "exact", "gamma", "3", "2", "2", "--witness", str(w))
    assert code == 0 and json.loads(out)["value"] == 6
    assert Labeling.from_json(w.read_text()).weight == 6
    code, out, _ = run(capsys, "exact", "gamma", "3", "2", "2", "--method", "brute")
    assert json.loads(out)["value"] == 6
    code, _, err = run(capsys, "exact", "gamma", "5", "8", "2", "--budget-states", "1")
    assert code == 3 and "budget" in err
    assert run(capsys, "exact", "gamma", "5", "8")[0] == 2


def test_render(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(linear_c5(8, 2).to_json())
    code, out, _ = run(capsys, "render", str(f))
    assert code == 0 and "[3]" in out and "*2*" in out
    png = tmp_path / "p.png"
    assert run(capsys, "render", str(f), "--format", "png", "--out", str(png))[0] == 0
    assert png.read_bytes()[:4] == b"\x89PNG"
