import json

import pytest

import slicemask as sm
from slicemask.pipeline import (
    STATUS_DEGRADED,
    STATUS_ERROR,
    STATUS_FALLBACK,
    STATUS_OK,
    read_corpus,
    safe_name,
)
from gencorpus import write_corpus

CONFIG = sm.MaskConfig(views=("ast", "dfg"), mask_limit=0.9)


def write_jsonl(path, records):
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")


def read_dir_bytes(root):
    return {p.name: p.read_bytes() for p in sorted(root.iterdir()) if p.is_file()}


def test_three_record_corpus(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_jsonl(
        corpus,
        [
            {"id": "a", "code": "int x = 1;"},
            {"id": "b", "code": "void f() {\n    int y = 2;\n    use(y);\n}"},
            {"id": "c", "code": "int z = 3;"},
        ],
    )
    out = tmp_path / "out"
    manifest = sm.run_batch(corpus, CONFIG, out)
    assert [r.status for r in manifest.records] == [STATUS_OK] * 3
    masks = sorted(p.name for p in out.glob("*.mask"))
    sidecars = sorted(p.name for p in out.glob("*.json") if p.name != "manifest.json")
    assert len(masks) == 3 and len(sidecars) == 3
    assert (out / "manifest.json").exists()
    doc = json.loads((out / "manifest.json").read_text())
    assert doc["record_count"] == 3
    assert doc["status_counts"] == {"ok": 3}


def test_fallback_status_and_sidecar(tmp_path):
    # many single-use statements with no shared dataflow give a sparse mask
    stmts = "\n".join(f"    int v{i} = {i};" for i in range(12))
    code = "void f() {\n" + stmts + "\n}"
    corpus = tmp_path / "corpus.jsonl"
    write_jsonl(corpus, [{"id": "sparse", "code": code}])
    out = tmp_path / "out"
    config = sm.MaskConfig(views=("dfg",), mask_limit=0.7)
    manifest = sm.run_batch(corpus, config, out)
    (record,) = manifest.records
    assert record.status == STATUS_FALLBACK
    sidecar = json.loads((out / f"{record.output}.json").read_text())
    assert sidecar["fallback"] is True
    assert sidecar["masked_fraction"] == 0.0  # replaced by full attention
    mask = sm.deserialize_mask((out / f"{record.output}.mask").read_bytes())
    assert mask.fallback and mask.ones == mask.n * mask.n


def test_syntax_error_record_still_produces_mask(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_jsonl(
        corpus,
        [
            {"id": "good", "code": "int x = 1;"},
            {"id": "broken", "code": "void f() {\n    int y = 1\n    if (y > {\n}"},
        ],
    )
    out = tmp_path / "out"
    manifest = sm.run_batch(corpus, CONFIG, out)
    by_id = {r.id: r for r in manifest.records}
    assert by_id["good"].status == STATUS_OK
    assert by_id["broken"].status == STATUS_DEGRADED
    assert (out / f"{by_id['broken'].output}.mask").exists()


def test_error_isolation_and_completeness(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    lines = [
        json.dumps({"id": "ok-1", "code": "int x = 1;"}),
        '{"id": "bad-json", "code": ',
        json.dumps({"id": "no-code"}),
        json.dumps({"id": "empty", "code": "   "}),
        json.dumps({"id": "ok-2", "code": "int y = 2;"}),
    ]
    corpus.write_text("\n".join(lines) + "\n", encoding="utf-8")
    out = tmp_path / "out"
    manifest = sm.run_batch(corpus, CONFIG, out)
    assert len(manifest.records) == 5  # manifest covers every input line
    statuses = {r.id: r.status for r in manifest.records}
    assert statuses["ok-1"] == STATUS_OK and statuses["ok-2"] == STATUS_OK
    assert statuses["line-2"] == STATUS_ERROR
    assert statuses["no-code"] == STATUS_ERROR
    assert statuses["empty"] == STATUS_ERROR


def test_duplicate_ids_flagged(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_jsonl(
        corpus,
        [{"id": "dup", "code": "int x = 1;"}, {"id": "dup", "code": "int y = 2;"}],
    )
    manifest = sm.run_batch(corpus, CONFIG, tmp_path / "out")
    statuses = [r.status for r in manifest.records]
    assert statuses.count(STATUS_ERROR) == 1
    assert statuses.count(STATUS_OK) == 1


def test_determinism_bit_identical(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_corpus(corpus, 20, seed=5)
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    sm.run_batch(corpus, CONFIG, out1)
    sm.run_batch(corpus, CONFIG, out2)
    assert read_dir_bytes(out1) == read_dir_bytes(out2)


def test_injected_bad_record_flips_only_itself(tmp_path):
    clean = tmp_path / "clean.jsonl"
    dirty = tmp_path / "dirty.jsonl"
    write_corpus(clean, 20, seed=5)
    write_corpus(dirty, 20, seed=5, inject_bad_at=7)
    out_clean = tmp_path / "out_clean"
    out_dirty = tmp_path / "out_dirty"
    m1 = sm.run_batch(clean, CONFIG, out_clean)
    m2 = sm.run_batch(dirty, CONFIG, out_dirty)
    bytes_clean = read_dir_bytes(out_clean)
    bytes_dirty = read_dir_bytes(out_dirty)
    flipped = safe_name("rec-0007")
    for name, blob in bytes_dirty.items():
        if name == "manifest.json":
            continue
        assert bytes_clean[name] == blob
    missing = set(bytes_clean) - set(bytes_dirty)
    assert missing == {f"{flipped}.mask", f"{flipped}.json"}
    s1 = {r.id: r.status for r in m1.records}
    s2 = {r.id: r.status for r in m2.records}
    assert s1["rec-0007"] == STATUS_OK
    assert s2["line-8"] == STATUS_ERROR
    assert all(s1[k] == s2[k] for k in s1 if k != "rec-0007")


def test_read_corpus_aliases(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_jsonl(corpus, [{"idx": 7, "function": "int x = 1;", "other": "ignored"}])
    ((record, reason, rec_id),) = read_corpus(corpus)
    assert reason is None
    assert record.id == "7" and record.code == "int x = 1;"


def test_missing_input_raises_io_error(tmp_path):
    with pytest.raises(sm.IoError):
        sm.run_batch(tmp_path / "nope.jsonl", CONFIG, tmp_path / "out")


def test_config_error_on_empty_views(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_jsonl(corpus, [{"id": "a", "code": "int x = 1;"}])
    with pytest.raises(sm.ConfigError):
        sm.run_batch(corpus, sm.MaskConfig(views=()), tmp_path / "out")


def test_safe_name_sanitizes_and_disambiguates():
    a = safe_name("weird/id with spaces")
    b = safe_name("weird/id_with spaces")
    assert a != b
    assert "/" not in a and " " not in a
    assert safe_name("x" * 100) == safe_name("x" * 100)
    assert len(safe_name("x" * 100)) <= 51


def test_stats_summary(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_corpus(corpus, 12, seed=9, inject_bad_at=3)
    out = tmp_path / "out"
    sm.run_batch(corpus, CONFIG, out)
    summary = sm.stats(out)
    assert summary["record_count"] == 12
    assert summary["status_counts"].get("error") == 1
    assert len(summary["records"]) == 12
    assert sum(summary["masked_fraction_histogram"]["counts"]) == 11
    assert summary["statements_max"] >= summary["statements_min"] >= 1


def test_stats_requires_manifest(tmp_path):
    with pytest.raises(sm.MissingManifest):
        sm.stats(tmp_path)


def test_single_statement_records_mask_nothing(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    write_jsonl(corpus, [{"id": "one", "code": "int x = 1;"}])
    out = tmp_path / "out"
    sm.run_batch(corpus, CONFIG, out)
    summary = sm.stats(out)
    assert summary["masked_fraction_mean"] == 0.0


def test_process_source_end_to_end():
    snippet, view, masks, final = sm.process_source(
        "void f() {\n    int a = 1;\n    use(a);\n}\n",
        sm.MaskConfig(views=("ast", "dfg"), mask_limit=0.9),
    )
    assert snippet.statement_count == 2
    assert len(masks) == 2
    assert final.n == len(snippet.tokens)
