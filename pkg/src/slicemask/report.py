"""Render run statistics to delimited files and matplotlib figures."""

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def write_stats_report(out_dir: str | Path, summary: dict) -> list[Path]:
    """Write summary.csv, records.csv and the two PNG figures.

    Returns the paths written, in a fixed order.
    """
    out = Path(out_dir)
    written: list[Path] = []

    summary_csv = out / "summary.csv"
    with summary_csv.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["metric", "value"])
        w.writerow(["views", "+".join(summary["views"])])
        w.writerow(["record_count", summary["record_count"]])
        for status, count in summary["status_counts"].items():
            w.writerow([f"status_{status}", count])
        w.writerow(["fallback_rate", summary["fallback_rate"]])
        w.writerow(["masked_fraction_mean", summary["masked_fraction_mean"]])
        w.writerow(["masked_fraction_min", summary["masked_fraction_min"]])
        w.writerow(["masked_fraction_max", summary["masked_fraction_max"]])
        w.writerow(["statements_mean", summary["statements_mean"]])
        w.writerow(["statements_min", summary["statements_min"]])
        w.writerow(["statements_max", summary["statements_max"]])
    written.append(summary_csv)

    records_csv = out / "records.csv"
    with records_csv.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "status", "masked_fraction", "fallback", "n_statements"])
        for row in summary["records"]:
            w.writerow(
                [
                    row["id"],
                    row["status"],
                    "" if row["masked_fraction"] is None else row["masked_fraction"],
                    "" if row["fallback"] is None else row["fallback"],
                    "" if row["n_statements"] is None else row["n_statements"],
                ]
            )
    written.append(records_csv)

    written.append(_histogram_figure(out, summary))
    written.append(_status_figure(out, summary))
    return written


def _histogram_figure(out: Path, summary: dict) -> Path:
    hist = summary["masked_fraction_histogram"]
    edges = hist["bin_edges"]
    counts = hist["counts"]
    centers = [(edges[i] + edges[i + 1]) / 2.0 for i in range(len(counts))]
    width = edges[1] - edges[0]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(centers, counts, width=width * 0.9, color="#4878cf", edgecolor="black")
    ax.set_xlabel("masked fraction")
    ax.set_ylabel("records")
    ax.set_title("Masked-fraction distribution ({})".format("+".join(summary["views"])))
    ax.set_xlim(0.0, 1.0)
    fig.tight_layout()
    path = out / "masked_fraction_hist.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _status_figure(out: Path, summary: dict) -> Path:
    counts = summary["status_counts"]
    labels = list(counts)
    values = [counts[k] for k in labels]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(labels)), values, color="#6acc65", edgecolor="black")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=20, ha="right")
    ax.set_ylabel("records")
    ax.set_title("Record status counts")
    fig.tight_layout()
    path = out / "status_counts.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
