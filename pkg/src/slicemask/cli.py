"""Command-line interface.

Exit codes: 0 success, 1 configuration error, 2 I/O error.  Per-record
failures inside ``batch`` are reported in the manifest and never set a
nonzero exit code.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .attention import ToyEncoderConfig, forward
from .backslice import mask_to_dict
from .errors import ConfigError, IoError, MissingManifest, SliceMaskError
from .graphs import compose
from .maskgen import MaskConfig, deserialize_mask, mask_sidecar, serialize_mask
from .metrics import QueryRanking, classification_metrics, mrr
from .pipeline import build_views, process_source, run_batch, stats
from .frontend import parse
from .report import write_stats_report


def _add_mask_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--views", default="ast,dfg", help="comma list from ast,cfg,dfg")
    p.add_argument("--last-def", action="store_true", help="add last-definition edges")
    p.add_argument("--last-use", action="store_true", help="add last-use edges")
    p.add_argument("--mask-limit", type=float, default=0.8, metavar="FRACTION",
                   help="masked-fraction limit above which full attention is used")
    p.add_argument("--strategy", choices=["all", "alternate"], default="all")
    p.add_argument("--lang", default="java")


def _config_from(args) -> MaskConfig:
    views = tuple(v.strip() for v in args.views.split(",") if v.strip())
    return MaskConfig(
        views=views,
        last_def=args.last_def,
        last_use=args.last_use,
        mask_limit=args.mask_limit,
        layer_strategy=args.strategy,
    ).validate()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slicemask")
    ap.add_argument("--version", action="version", version=f"slicemask {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="emit the composed code-view graph as JSON")
    g.add_argument("file")
    _add_mask_options(g)
    g.add_argument("--out", help="write JSON here instead of stdout")

    m = sub.add_parser("mask", help="emit statement masks and the attention mask")
    m.add_argument("file")
    _add_mask_options(m)
    m.add_argument("--out", help="directory for the binary mask + sidecar")

    b = sub.add_parser("batch", help="run the full pipeline over a JSONL corpus")
    b.add_argument("corpus")
    _add_mask_options(b)
    b.add_argument("--out", required=True, help="output directory")

    s = sub.add_parser("stats", help="summarize a batch output directory")
    s.add_argument("dir")
    s.add_argument("--no-figures", action="store_true", help="skip CSV/PNG outputs")

    d = sub.add_parser("demo-attn", help="run the reference encoder on a mask file")
    d.add_argument("mask", help="binary mask file produced by `mask` or `batch`")
    d.add_argument("layers", type=int, help="number of encoder layers")
    d.add_argument("--strategy", choices=["all", "alternate"], default="all")
    d.add_argument("--dim", type=int, default=8)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out", help="write the trace JSON here instead of stdout")

    mt = sub.add_parser("metrics", help="evaluation metric utilities")
    mt_sub = mt.add_subparsers(dest="metric", required=True)
    mrr_p = mt_sub.add_parser("mrr", help="mean reciprocal rank")
    mrr_p.add_argument("file", help="JSON array of ranks, or JSONL with a 'rank' field")
    clf_p = mt_sub.add_parser("clf", help="macro-F1 / precision / recall")
    clf_p.add_argument("file", help='JSON object with "pred", "truth" and optional "classes"')

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ConfigError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IoError, MissingManifest, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SliceMaskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "graph":
        return _cmd_graph(args)
    if args.command == "mask":
        return _cmd_mask(args)
    if args.command == "batch":
        return _cmd_batch(args)
    if args.command == "stats":
        return _cmd_stats(args)
    if args.command == "demo-attn":
        return _cmd_demo_attn(args)
    if args.command == "metrics":
        return _cmd_metrics(args)
    raise ConfigError(f"unknown command {args.command!r}")


def _read_source(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write {out}: {exc}") from exc
    else:
        print(text)


def _cmd_graph(args) -> int:
    config = _config_from(args)
    snippet = parse(_read_source(args.file), args.lang)
    composed = compose(build_views(snippet, config))
    _emit(composed.to_json(), args.out)
    return 0


def _cmd_mask(args) -> int:
    config = _config_from(args)
    snippet, _view, masks, final = process_source(_read_source(args.file), config, args.lang)
    doc = mask_sidecar(
        final,
        extra={
            "n_statements": snippet.statement_count,
            "masks": [mask_to_dict(m, snippet) for m in masks],
        },
    )
    if args.out:
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            stem = Path(args.file).stem
            (out / f"{stem}.mask").write_bytes(serialize_mask(final))
            (out / f"{stem}.json").write_text(
                json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
            )
        except OSError as exc:
            raise IoError(f"cannot write {args.out}: {exc}") from exc
        print(f"wrote {out / (stem + '.mask')}")
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))
    return 0


def _cmd_batch(args) -> int:
    config = _config_from(args)
    manifest = run_batch(args.corpus, config, args.out, language=args.lang)
    counts = manifest.status_counts
    total = len(manifest.records)
    print(f"processed {total} records -> {args.out}")
    for status, count in counts.items():
        print(f"  {status}: {count}")
    return 0


def _cmd_stats(args) -> int:
    summary = stats(args.dir)
    print(f"records: {summary['record_count']}  views: {'+'.join(summary['views'])}")
    for status, count in summary["status_counts"].items():
        print(f"  {status}: {count}")
    print(f"fallback rate: {summary['fallback_rate']:.4f}")
    print(
        "masked_fraction mean/min/max: "
        f"{summary['masked_fraction_mean']:.4f}/"
        f"{summary['masked_fraction_min']:.4f}/"
        f"{summary['masked_fraction_max']:.4f}"
    )
    print(
        "statements mean/min/max: "
        f"{summary['statements_mean']:.2f}/"
        f"{summary['statements_min']}/"
        f"{summary['statements_max']}"
    )
    if not args.no_figures:
        for path in write_stats_report(args.dir, summary):
            print(f"wrote {path}")
    return 0


def _cmd_demo_attn(args) -> int:
    try:
        blob = Path(args.mask).read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read {args.mask}: {exc}") from exc
    mask = deserialize_mask(blob)
    cfg = ToyEncoderConfig(
        layers=args.layers,
        model_dim=args.dim,
        layer_strategy=args.strategy,
        seed=args.seed,
    ).validate()
    rng = np.random.default_rng(cfg.seed)
    inputs = rng.normal(0.0, 1.0, size=(mask.n, cfg.model_dim))
    outputs, trace = forward(inputs, mask, cfg)
    doc = {
        "n": mask.n,
        "layers": cfg.layers,
        "strategy": cfg.layer_strategy,
        "seed": cfg.seed,
        "mask_applied": trace.mask_applied,
        "attention": [m.tolist() for m in trace.layers],
        "outputs": outputs.tolist(),
    }
    _emit(json.dumps(doc, indent=2), args.out)
    return 0


def _cmd_metrics(args) -> int:
    text = _read_source(args.file)
    if args.metric == "mrr":
        ranks = _parse_ranks(text)
        value = mrr(ranks)
        print(f"MRR over {len(ranks)} queries: {value:.6f}")
        return 0
    doc = json.loads(text)
    if not isinstance(doc, dict) or "pred" not in doc or "truth" not in doc:
        raise ConfigError('clf input must be a JSON object with "pred" and "truth"')
    pred = list(doc["pred"])
    truth = list(doc["truth"])
    classes = int(doc.get("classes", max(pred + truth) + 1 if pred or truth else 0))
    report = classification_metrics(pred, truth, classes)
    print(json.dumps(report.to_json_dict(), indent=2))
    return 0


def _parse_ranks(text: str) -> list[QueryRanking]:
    text = text.strip()
    if not text:
        raise ConfigError("empty metrics input")
    if text.startswith("["):
        values = json.loads(text)
        return [QueryRanking(query_id=str(i), rank=int(r)) for i, r in enumerate(values)]
    ranks = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        doc = json.loads(line)
        if "rank" not in doc:
            raise ConfigError(f"line {lineno}: missing 'rank'")
        ranks.append(QueryRanking(query_id=str(doc.get("id", lineno)), rank=int(doc["rank"])))
    return ranks


if __name__ == "__main__":
    sys.exit(main())
