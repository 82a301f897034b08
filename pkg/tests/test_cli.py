import io
import json

import pytest

from stackfold.cli import main
from stackfold.core import RnaSequence, SecondaryStructure, count_stacking_pairs


def run(capsys, *argv, stdin: str | None = None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def revalidate(doc):
    s = SecondaryStructure(RnaSequence(doc["sequence"]), tuple(map(tuple, doc["pairs"])))
    assert count_stacking_pairs(s) == doc["count"]


def test_dp_raw_string(capsys):
    code, out, _ = run(capsys, "dp", "GGGAAACCC", "--json")
    assert code == 0
    doc = json.loads(out)["records"][0]
    assert doc["count"] == 2 and doc["pairs"] == [[1, 9], [2, 8], [3, 7]]
    revalidate(doc)


def test_dp_human(capsys):
    code, out, _ = run(capsys, "dp", "GGGAAACCC")
    assert code == 0 and "(((...)))" in out and "stacking pairs: 2" in out


def test_dp_literal_flag(capsys):
    _, out, _ = run(capsys, "dp", "--literal", "--json", "AAGUUAAGUU")
    assert json.loads(out)["records"][0]["count"] == 1


def test_greedy_example(capsys):
    code, out, _ = run(capsys, "greedy", "--width", "3", "AAGUU", "--json")
    doc = json.loads(out)["records"][0]
    assert code == 0 and doc["count"] == 1 and doc["runs"] == [[1, 5, 1]]
    revalidate(doc)


def test_greedy_rejects_small_width(capsys):
    code, _, err = run(capsys, "greedy", "--width", "2", "AAGUU")
    assert code != 0 and "width" in err


def test_fasta_multi_record(tmp_path, capsys):
    f = tmp_path / "in.fa"
    f.write_text(">one\nGGGAAACCC\n>two\nAAGUU\n")
    _, out, _ = run(capsys, "dp", str(f), "--json")
    recs = json.loads(out)["records"]
    assert [r["name"] for r in recs] == ["one", "two"]
    assert [r["count"] for r in recs] == [2, 1]


def test_stdin_input(capsys, monkeypatch):
    code, out, _ = run(capsys, "census", "--json", stdin=">s\nAAGUU\n", monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out)["records"][0]["counts"]["AA"] == 1


def test_invalid_sequence(capsys):
    code, _, err = run(capsys, "dp", "ACGX")
    assert code == 2 and "position 4" in err


def test_exact_limit_refusal(capsys):
    code, _, err = run(capsys, "exact", "A" * 30)
    assert code == 2 and "--max-len" in err and "limit" in err
    code, out, _ = run(capsys, "exact", "--max-len", "30", "--json", "A" * 30)
    assert code == 0 and json.loads(out)["records"][0]["count"] == 0


def test_exact_modes(capsys):
    for mode, want in (("general", 4), ("planar", 4), ("nested", 2)):
        _, out, _ = run(capsys, "exact", "--mode", mode, "--json", "AAAGGGUUUCCC")
        doc = json.loads(out)["records"][0]
        assert doc["count"] == want
        revalidate(doc)


def test_planar_command(tmp_path, capsys):
    p = tmp_path / "pairs.txt"
    p.write_text("1 8\n2 7\n3 10\n4 9\n5 12\n6 11\n")
    code, out, _ = run(capsys, "planar", "--pairs", str(p), "AAGGCCUUCCGG", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["records"][0]["planar"] is False
    assert doc["records"][0]["interleaving_block"] is True
    _, out, _ = run(capsys, "planar", "--pairs", str(p), "AAGGCCUUCCGG")
    assert "planar: no" in out


def test_unknown_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dp", "--frobnicate", "ACGU"])
    assert exc.value.code != 0


def test_reduce_and_witness(tmp_path, capsys):
    inst = tmp_path / "inst.txt"
    inst.write_text("n 1\nm 1\n1 1 1\n")
    prefix = tmp_path / "one"
    code, out, _ = run(capsys, "reduce", "--instance", str(inst), "--out-prefix", str(prefix),
                       "--json")
    doc = json.loads(out)
    assert code == 0 and doc["h"] == 281 and doc["census_matches"]
    assert (tmp_path / "one.fa").read_text().startswith(">")
    side = json.loads((tmp_path / "one.json").read_text())
    assert side["h"] == 281 and side["d"] == 9 and "anchors" in side
    pairs = tmp_path / "w.txt"
    code, out, _ = run(capsys, "witness", "--layout", str(tmp_path / "one.json"),
                       "--matching", "1", "--out", str(pairs), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 281 and doc["planar"]
    assert len(pairs.read_text().splitlines()) == len(doc["pairs"])


def test_witness_bad_matching(tmp_path, capsys):
    inst = tmp_path / "inst.txt"
    inst.write_text("n 2\n1 1 1\n1 2 2\n2 2 2\n")
    run(capsys, "reduce", "--instance", str(inst), "--out-prefix", str(tmp_path / "x"))
    code, _, err = run(capsys, "witness", "--layout", str(tmp_path / "x.json"),
                       "--matching", "1,2")
    assert code == 2 and "perfect matching" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "reduce", "--instance", "/nonexistent/x", "--out-prefix", "y")
    assert code == 2 and "error" in err


def test_ratio_bench_is_stable(capsys):
    args = ("ratio-bench", "--count", "20", "--len", "8-12", "--seed", "5", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--jobs", "2")
    assert a == b
    doc = json.loads(a)
    assert doc["violations"] == [] and doc["min_ratio"] >= 1 / 3


def test_ratio_bench_refuses_long(capsys):
    code, _, err = run(capsys, "ratio-bench", "--count", "1", "--len", "40", "--seed", "1")
    assert code == 2 and "limit" in err


def test_json_is_byte_stable(capsys):
    _, a, _ = run(capsys, "greedy", "--json", "GGGGAAACCCCAAGUUAAGUU")
    _, b, _ = run(capsys, "greedy", "--json", "GGGGAAACCCCAAGUUAAGUU")
    assert a == b and "timing" not in a


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "dp", "--timing", "--json", "GGGAAACCC")
    assert json.loads(out)["records"][0]["timing"]["seconds"] >= 0


def test_scale_bench(capsys):
    code, out, _ = run(capsys, "scale-bench", "--algo", "greedy", "--sizes", "2000,4000",
                       "--backend", "both", "--json", "--memory")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) >= 2
    assert all(r["peak_bytes"] > 0 for r in doc["rows"])
    counts = {}
    for r in doc["rows"]:
        counts.setdefault(r["n"], set()).add(r["count"])
    assert all(len(v) == 1 for v in counts.values())
    code, out, _ = run(capsys, "scale-bench", "--algo", "dp", "--sizes", "50,100")
    assert code == 0 and "seconds" in out
