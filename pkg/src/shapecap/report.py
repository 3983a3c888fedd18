"""Summary reporting over a generated dataset directory.

Reads the jsonl records, writes a delimited summary (summary.csv) and a few
matplotlib figures next to it. Works on any directory produced with the
jsonl+png or both formats.
"""
from __future__ import annotations

import csv
import json
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .dataset_io import read_manifest


def _load_records(path: Path, manifest: dict):
    records = {}
    for split in manifest["splits"]:
        jsonl_path = path / f"{split}.jsonl"
        if not jsonl_path.exists():
            continue
        with open(jsonl_path, "r", encoding="utf-8") as fh:
            records[split] = [json.loads(line) for line in fh if line.strip()]
    return records


def summarize(path) -> dict:
    """Per-split statistics: counts, label balance, tags, caption lengths."""
    path = Path(path)
    manifest = read_manifest(path)
    records = _load_records(path, manifest)
    summary = {"dataset": manifest["dataset"], "splits": {}}
    for split, recs in records.items():
        tags = Counter(r["partition_tag"] for r in recs)
        lengths = [len(r["caption"].split()) for r in recs]
        combos = Counter(
            (e["shape"], e["color"]) for r in recs for e in r["world"]["entities"]
        )
        summary["splits"][split] = {
            "count": len(recs),
            "positive_fraction": (
                sum(r["label"] for r in recs) / len(recs) if recs else 0.0
            ),
            "partition_tags": dict(tags),
            "mean_caption_tokens": sum(lengths) / len(lengths) if lengths else 0.0,
            "entity_combinations": {f"{s}/{c}": n for (s, c), n in combos.items()},
        }
    return summary


def write_report(path, out_dir) -> list:
    """Write summary.csv plus figures; returns the list of written files."""
    path = Path(path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = summarize(path)
    written = []

    csv_path = out_dir / "summary.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["split", "statistic", "key", "value"])
        for split, stats in sorted(summary["splits"].items()):
            writer.writerow([split, "count", "", stats["count"]])
            writer.writerow([split, "positive_fraction", "", f"{stats['positive_fraction']:.6f}"])
            writer.writerow([split, "mean_caption_tokens", "", f"{stats['mean_caption_tokens']:.6f}"])
            for tag, n in sorted(stats["partition_tags"].items()):
                writer.writerow([split, "partition_tag", tag, n])
            for combo, n in sorted(stats["entity_combinations"].items()):
                writer.writerow([split, "entity_combination", combo, n])
    written.append(csv_path)

    written.append(_label_balance_figure(summary, out_dir))
    written.append(_partition_figure(summary, out_dir))
    written.append(_combination_figure(summary, out_dir))
    return written


def _label_balance_figure(summary, out_dir: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    splits = sorted(summary["splits"])
    fractions = [summary["splits"][s]["positive_fraction"] for s in splits]
    ax.bar(splits, fractions, color="#4878d0")
    ax.axhline(0.5, color="gray", linestyle="--", linewidth=1)
    ax.set_ylim(0, 1)
    ax.set_ylabel("positive fraction")
    ax.set_title(f"label balance: {summary['dataset']}")
    fig.tight_layout()
    out = out_dir / "label_balance.png"
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def _partition_figure(summary, out_dir: Path) -> Path:
    tags = Counter()
    for stats in summary["splits"].values():
        tags.update(stats["partition_tags"])
    fig, ax = plt.subplots(figsize=(7, 0.5 + 0.35 * max(len(tags), 1)))
    names = sorted(tags)
    ax.barh(names, [tags[n] for n in names], color="#ee854a")
    ax.set_xlabel("instances")
    ax.set_title("partition tags (all splits)")
    fig.tight_layout()
    out = out_dir / "partition_tags.png"
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def _combination_figure(summary, out_dir: Path) -> Path:
    combos = Counter()
    for stats in summary["splits"].values():
        combos.update(stats["entity_combinations"])
    shapes = sorted({k.split("/")[0] for k in combos})
    colors = sorted({k.split("/")[1] for k in combos})
    grid = [[combos.get(f"{s}/{c}", 0) for c in colors] for s in shapes]
    fig, ax = plt.subplots(figsize=(6, 5))
    im = ax.imshow(grid, cmap="viridis")
    ax.set_xticks(range(len(colors)), colors, rotation=45, ha="right")
    ax.set_yticks(range(len(shapes)), shapes)
    ax.set_title("entity shape/color frequencies (all splits)")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    out = out_dir / "shape_color_frequencies.png"
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
