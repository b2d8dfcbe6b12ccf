import json

import pytest

import slicemask as sm
from slicemask.cli import main
from conftest import LOOP_PRINT
from gencorpus import write_corpus


@pytest.fixture()
def loop_print_file(tmp_path):
    path = tmp_path / "loop_print.java"
    path.write_text(LOOP_PRINT, encoding="utf-8")
    return path


def test_graph_subcommand(loop_print_file, capsys):
    assert main(["graph", str(loop_print_file), "--views", "ast,dfg"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == {"nodes", "edges", "views"}
    assert doc["views"] == ["ast", "dfg"]
    kinds = {e["kind"] for e in doc["edges"]}
    assert "AST" in kinds and "DFG" in kinds


def test_graph_last_use_flag(tmp_path, capsys):
    src = tmp_path / "g.java"
    src.write_text("void f() {\n    use(g);\n    use2(g);\n}\n", encoding="utf-8")
    assert main(["graph", str(src), "--views", "dfg", "--last-use"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert any(e["kind"] == "LAST_USE" for e in doc["edges"])


def test_mask_subcommand_stdout(loop_print_file, capsys):
    assert main(["mask", str(loop_print_file), "--views", "ast,dfg"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] > 0
    assert len(doc["masks"]) == 7
    seed7 = next(m for m in doc["masks"] if m["lines"] == [2, 5, 6, 7, 8])
    assert seed7


def test_mask_subcommand_writes_files(loop_print_file, tmp_path, capsys):
    out = tmp_path / "maskdir"
    assert main(["mask", str(loop_print_file), "--out", str(out)]) == 0
    assert (out / "loop_print.mask").exists() and (out / "loop_print.json").exists()
    mask = sm.deserialize_mask((out / "loop_print.mask").read_bytes())
    assert mask.n > 0


def test_batch_stats_and_demo_attn_roundtrip(tmp_path, capsys):
    corpus = tmp_path / "corpus.jsonl"
    write_corpus(corpus, 6, seed=3)
    out = tmp_path / "run"
    assert main(["batch", str(corpus), "--out", str(out), "--views", "ast,dfg"]) == 0
    assert (out / "manifest.json").exists()

    assert main(["stats", str(out)]) == 0
    text = capsys.readouterr().out
    assert "records: 6" in text
    assert (out / "summary.csv").exists()
    assert (out / "records.csv").exists()
    assert (out / "masked_fraction_hist.png").exists()
    assert (out / "status_counts.png").exists()

    mask_file = sorted(out.glob("*.mask"))[0]
    assert main(["demo-attn", str(mask_file), "2", "--strategy", "alternate"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mask_applied"] == [True, False]
    assert len(doc["attention"]) == 2


def test_stats_no_figures_flag(tmp_path, capsys):
    corpus = tmp_path / "corpus.jsonl"
    write_corpus(corpus, 3, seed=4)
    out = tmp_path / "run"
    main(["batch", str(corpus), "--out", str(out)])
    capsys.readouterr()
    assert main(["stats", str(out), "--no-figures"]) == 0
    assert not (out / "summary.csv").exists()


def test_metrics_mrr_array_and_jsonl(tmp_path, capsys):
    f = tmp_path / "ranks.json"
    f.write_text("[1, 2, 4]", encoding="utf-8")
    assert main(["metrics", "mrr", str(f)]) == 0
    assert "0.583333" in capsys.readouterr().out

    g = tmp_path / "ranks.jsonl"
    g.write_text('{"id": "q1", "rank": 1}\n{"id": "q2", "rank": 2}\n', encoding="utf-8")
    assert main(["metrics", "mrr", str(g)]) == 0
    assert "0.75" in capsys.readouterr().out


def test_metrics_clf(tmp_path, capsys):
    f = tmp_path / "clf.json"
    f.write_text(json.dumps({"pred": [0, 0, 0, 0], "truth": [0, 1, 0, 1]}), encoding="utf-8")
    assert main(["metrics", "clf", str(f)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["macro_f1"] - 1.0 / 3.0) < 1e-12


def test_exit_code_config_error(loop_print_file, capsys):
    assert main(["graph", str(loop_print_file), "--views", "nope"]) == 1
    assert main(["batch", str(loop_print_file), "--out", "/tmp/x", "--mask-limit", "0"]) == 1


def test_exit_code_io_error(tmp_path, capsys):
    assert main(["graph", str(tmp_path / "missing.java")]) == 2
    assert main(["stats", str(tmp_path)]) == 2  # no manifest


def test_batch_exit_zero_despite_bad_records(tmp_path, capsys):
    corpus = tmp_path / "corpus.jsonl"
    write_corpus(corpus, 5, seed=6, inject_bad_at=2)
    assert main(["batch", str(corpus), "--out", str(tmp_path / "out")]) == 0
    text = capsys.readouterr().out
    assert "error: 1" in text
