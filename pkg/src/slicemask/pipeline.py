"""Batch pipeline: JSONL corpus in, masks + sidecars + manifest out.

Every input line yields exactly one manifest entry.  A record that cannot
be processed (bad JSON, missing fields, empty source) is reported with
status "error" and never aborts the run; a record whose snippet needed
parser recovery is "parse-degraded"; one whose mask tripped the masking
limit is "fallback-to-full"; everything else is "ok".  Outputs are keyed
by record id and serialized with sorted keys, so repeated runs over the
same input and config are byte-identical.
"""

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .astview import build_ast_view
from .backslice import all_masks, mask_to_dict
from .cfg import build_cfg
from .dataflow import build_dfg, compute_rda
from .errors import ConfigError, IoError, MissingManifest, SliceMaskError
from .frontend import CodeSnippet, default_holders, parse
from .graphs import CodeViewGraph, compose
from .maskgen import AttentionMask, MaskConfig, apply_mask_limit, attention_gen, serialize_mask

STATUS_OK = "ok"
STATUS_FALLBACK = "fallback-to-full"
STATUS_DEGRADED = "parse-degraded"
STATUS_ERROR = "error"

_HISTOGRAM_BINS = 10


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    code: str
    docstring: str | None = None
    label: str | int | None = None


@dataclass
class RecordOutcome:
    id: str
    status: str
    reason: str | None = None
    output: str | None = None
    masked_fraction: float | None = None
    fallback: bool | None = None


@dataclass
class RunManifest:
    config: MaskConfig
    records: list[RecordOutcome] = field(default_factory=list)

    @property
    def status_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for r in self.records:
            counts[r.status] = counts.get(r.status, 0) + 1
        return dict(sorted(counts.items()))

    def histogram(self) -> dict:
        edges = [round(i / _HISTOGRAM_BINS, 1) for i in range(_HISTOGRAM_BINS + 1)]
        counts = [0] * _HISTOGRAM_BINS
        for r in self.records:
            if r.masked_fraction is None:
                continue
            idx = min(int(r.masked_fraction * _HISTOGRAM_BINS), _HISTOGRAM_BINS - 1)
            counts[idx] += 1
        return {"bin_edges": edges, "counts": counts}

    def to_json_dict(self) -> dict:
        return {
            "tool": "slicemask",
            "version": __version__,
            "config": self.config.canonical(),
            "config_digest": self.config.digest(),
            "record_count": len(self.records),
            "status_counts": self.status_counts,
            "masked_fraction_histogram": self.histogram(),
            "records": [
                {
                    k: v
                    for k, v in {
                        "id": r.id,
                        "status": r.status,
                        "reason": r.reason,
                        "output": r.output,
                        "masked_fraction": r.masked_fraction,
                        "fallback": r.fallback,
                    }.items()
                    if v is not None
                }
                for r in sorted(self.records, key=lambda r: r.id)
            ],
        }


def build_views(snippet: CodeSnippet, config: MaskConfig) -> list[CodeViewGraph]:
    """Build the configured views; the CFG is built once and shared."""
    config.validate()
    needs_cfg = "cfg" in config.views or "dfg" in config.views
    cfg_view = build_cfg(snippet) if needs_cfg else None
    views: list[CodeViewGraph] = []
    for tag in sorted(config.views):
        if tag == "ast":
            views.append(build_ast_view(snippet))
        elif tag == "cfg":
            views.append(cfg_view)
        elif tag == "dfg":
            facts = compute_rda(snippet, cfg_view)
            views.append(
                build_dfg(
                    snippet,
                    cfg_view,
                    facts,
                    last_def=config.last_def,
                    last_use=config.last_use,
                )
            )
    return views


def process_source(
    code: str, config: MaskConfig, language: str = "java"
) -> tuple[CodeSnippet, CodeViewGraph, list, AttentionMask]:
    """Full single-snippet pipeline: parse, views, slices, limited mask."""
    snippet = parse(code, language)
    composed = compose(build_views(snippet, config))
    masks = all_masks(snippet, composed, default_holders(language))
    attn = attention_gen(snippet, masks, config)
    final = apply_mask_limit(attn, config.mask_limit)
    return snippet, composed, masks, final


def read_corpus(path: Path) -> list[tuple[CorpusRecord | None, str | None, str]]:
    """Parse a JSONL corpus; one result per input line.

    Returns (record, error_reason, fallback_id) triples; exactly one of
    record / error_reason is set.
    """
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoError(f"cannot read corpus: {exc}") from exc
    results: list[tuple[CorpusRecord | None, str | None, str]] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        fallback_id = f"line-{lineno}"
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            results.append((None, f"invalid JSON: {exc.msg}", fallback_id))
            continue
        if not isinstance(doc, dict):
            results.append((None, "record is not a JSON object", fallback_id))
            continue
        raw_id = doc.get("id", doc.get("idx"))
        rec_id = str(raw_id) if raw_id is not None else None
        code = doc.get("code", doc.get("function"))
        if rec_id is None:
            results.append((None, "missing id", fallback_id))
            continue
        if rec_id in seen:
            results.append((None, "duplicate id", rec_id))
            continue
        seen.add(rec_id)
        if not isinstance(code, str) or not code.strip():
            results.append((None, "missing or empty code", rec_id))
            continue
        results.append(
            (
                CorpusRecord(
                    id=rec_id,
                    code=code,
                    docstring=doc.get("docstring"),
                    label=doc.get("label"),
                ),
                None,
                rec_id,
            )
        )
    return results


def safe_name(record_id: str) -> str:
    """Filesystem-safe, collision-free stem for a record id."""
    stem = re.sub(r"[^A-Za-z0-9._-]", "_", record_id)[:40]
    tag = hashlib.sha1(record_id.encode("utf-8")).hexdigest()[:10]
    return f"{stem}-{tag}" if stem else tag


def run_batch(
    input_path: str | Path,
    config: MaskConfig,
    out_dir: str | Path,
    language: str = "java",
) -> RunManifest:
    config.validate()
    input_path = Path(input_path)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output dir: {exc}") from exc

    manifest = RunManifest(config=config)
    for record, reason, rec_id in read_corpus(input_path):
        if record is None:
            manifest.records.append(
                RecordOutcome(id=rec_id, status=STATUS_ERROR, reason=reason)
            )
            continue
        manifest.records.append(_process_record(record, config, out, language))

    manifest_doc = json.dumps(manifest.to_json_dict(), sort_keys=True, indent=2) + "\n"
    try:
        (out / "manifest.json").write_text(manifest_doc, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write manifest: {exc}") from exc
    return manifest


def _process_record(
    record: CorpusRecord, config: MaskConfig, out: Path, language: str
) -> RecordOutcome:
    try:
        snippet, _view, masks, final = process_source(record.code, config, language)
    except SliceMaskError as exc:
        return RecordOutcome(id=record.id, status=STATUS_ERROR, reason=str(exc))
    except Exception as exc:  # never let one snippet kill the batch
        return RecordOutcome(
            id=record.id, status=STATUS_ERROR, reason=f"{type(exc).__name__}: {exc}"
        )
    if snippet.parse_degraded:
        status = STATUS_DEGRADED
    elif final.fallback:
        status = STATUS_FALLBACK
    else:
        status = STATUS_OK
    stem = safe_name(record.id)
    sidecar = {
        "id": record.id,
        "status": status,
        "language": language,
        "n_tokens": len(snippet.tokens),
        "n_statements": snippet.statement_count,
        "masked_fraction": final.masked_fraction,
        "fallback": final.fallback,
        "config": config.canonical(),
        "config_digest": config.digest(),
        "masks": [mask_to_dict(m, snippet) for m in masks],
    }
    try:
        (out / f"{stem}.mask").write_bytes(serialize_mask(final))
        (out / f"{stem}.json").write_text(
            json.dumps(sidecar, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise IoError(f"cannot write outputs for {record.id}: {exc}") from exc
    return RecordOutcome(
        id=record.id,
        status=status,
        output=stem,
        masked_fraction=final.masked_fraction,
        fallback=final.fallback,
    )


def stats(out_dir: str | Path) -> dict:
    """Aggregate a finished run directory into a summary document."""
    out = Path(out_dir)
    manifest_path = out / "manifest.json"
    if not manifest_path.exists():
        raise MissingManifest(f"no manifest.json in {out}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))

    fractions: list[float] = []
    statement_counts: list[int] = []
    rows: list[dict] = []
    for rec in manifest["records"]:
        row = {
            "id": rec["id"],
            "status": rec["status"],
            "masked_fraction": rec.get("masked_fraction"),
            "fallback": rec.get("fallback"),
            "n_statements": None,
        }
        if rec.get("output"):
            sidecar_path = out / f"{rec['output']}.json"
            if sidecar_path.exists():
                sidecar = json.loads(sidecar_path.read_text(encoding="utf-8"))
                row["n_statements"] = sidecar.get("n_statements")
        if row["masked_fraction"] is not None:
            fractions.append(row["masked_fraction"])
        if row["n_statements"] is not None:
            statement_counts.append(row["n_statements"])
        rows.append(row)

    counts = manifest["status_counts"]
    total = manifest["record_count"]
    processed = total - counts.get(STATUS_ERROR, 0)
    summary = {
        "views": manifest["config"]["views"],
        "config_digest": manifest["config_digest"],
        "record_count": total,
        "status_counts": counts,
        "fallback_rate": (counts.get(STATUS_FALLBACK, 0) / processed) if processed else 0.0,
        "masked_fraction_mean": (sum(fractions) / len(fractions)) if fractions else 0.0,
        "masked_fraction_min": min(fractions) if fractions else 0.0,
        "masked_fraction_max": max(fractions) if fractions else 0.0,
        "masked_fraction_histogram": manifest["masked_fraction_histogram"],
        "statements_mean": (sum(statement_counts) / len(statement_counts))
        if statement_counts
        else 0.0,
        "statements_min": min(statement_counts) if statement_counts else 0,
        "statements_max": max(statement_counts) if statement_counts else 0,
        "records": rows,
    }
    return summary
