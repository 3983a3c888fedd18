"""Command-line interface: generate, validate, inspect, datasets, report."""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import dataset_io, instancegen
from .instancegen import BUILTIN_DATASETS, SPLITS, builtin_dataset
from .worldgen import GenerationError, WorldSpec


def _resolve_dataset(name_or_path: str):
    if name_or_path in BUILTIN_DATASETS:
        return builtin_dataset(name_or_path)
    path = Path(name_or_path)
    if path.exists():
        return dataset_io.load_dataset_config(path)
    raise SystemExit(
        f"error: {name_or_path!r} is neither a built-in dataset "
        f"({', '.join(BUILTIN_DATASETS)}) nor a config file"
    )


def _without_noise(ds):
    if hasattr(ds, "components"):
        return dataclasses.replace(
            ds, components=tuple(_without_noise(c) for c in ds.components)
        )
    if hasattr(ds, "base"):
        return dataclasses.replace(ds, base=_without_noise(ds.base))
    specs = tuple(
        (split, dataclasses.replace(ws, pixel_noise_sigma=0.0))
        for split, ws in ds.world_specs
    )
    return dataclasses.replace(ds, world_specs=specs)


def _cmd_generate(args) -> int:
    dataset = _resolve_dataset(args.dataset)
    if args.partition:
        dataset = instancegen.restrict_partition(dataset, args.partition)
    if args.no_noise:
        dataset = _without_noise(dataset)
    instances = instancegen.generate_instances(
        dataset, args.split, args.count, args.seed
    )
    manifest = dataset_io.write_dataset_dir(
        instances, args.out, args.format, dataset, args.seed, force=args.force
    )
    print(f"wrote {manifest['splits'].get(args.split, 0)} instances to {args.out}")
    return 0


def _cmd_validate(args) -> int:
    report = dataset_io.validate_dataset(args.dir)
    for v in report.violations:
        print(f"{v.kind} at {v.location}: {v.message}")
    print(
        f"checked {report.checked_records} records, {report.checked_files} files: "
        f"{len(report.violations)} violation(s)"
    )
    return 0 if report.ok else 1


def _cmd_inspect(args) -> int:
    path = Path(args.dir)
    jsonl_path = path / f"{args.split}.jsonl"
    if not jsonl_path.exists():
        print(f"error: no {jsonl_path.name} under {args.dir}", file=sys.stderr)
        return 1
    with open(jsonl_path, "r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            record = json.loads(line)
            if record["index"] == args.index:
                print(f"caption:       {record['caption']}")
                print(f"label:         {record['label']}")
                print(f"partition tag: {record['partition_tag']}")
                print(f"sub seed:      {record['sub_seed']}")
                print(f"ast:           {json.dumps(record['ast'], sort_keys=True)}")
                print("world:")
                for e in record["world"]["entities"]:
                    print(
                        f"  {e['color']} {e['shape']} at "
                        f"({e['location'][0]:.2f}, {e['location'][1]:.2f}) "
                        f"size {e['size']:.3f} rot {e['rotation']:.3f}"
                    )
                print(f"  pixel noise sigma: {record['world']['pixel_noise_sigma']}")
                return 0
    print(f"error: index {args.index} not found in {jsonl_path.name}", file=sys.stderr)
    return 1


def _describe_world_spec(ws: WorldSpec) -> str:
    counts = ",".join(str(c) for c in ws.count_choices)
    out = f"counts {{{counts}}}, {len(ws.allowed_combinations)} combos"
    if ws.target_combinations:
        held = ", ".join(f"{c.value} {s.value}" for s, c in ws.target_combinations)
        out += f", held-out target: {held}"
    return out


def _cmd_datasets(_args) -> int:
    for name in BUILTIN_DATASETS:
        ds = builtin_dataset(name)
        patterns = ", ".join(k for k, w in ds.caption_spec.pattern_weights if w > 0)
        print(f"{name}: {patterns} captions")
        for split, ws in ds.world_specs:
            print(f"  {split:<11} {_describe_world_spec(ws)}")
    return 0


def _cmd_report(args) -> int:
    from . import report

    written = report.write_report(args.dir, args.out)
    for p in written:
        print(f"wrote {p}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapecap",
        description="Generate and inspect image-caption-agreement datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a dataset split")
    gen.add_argument("--dataset", required=True,
                     help="built-in name or path to a config file")
    gen.add_argument("--split", choices=SPLITS, default="train")
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--format", choices=dataset_io.FORMATS, default="jsonl+png")
    gen.add_argument("--partition", default=None,
                     help="restrict generation to one partition tag")
    gen.add_argument("--no-noise", action="store_true",
                     help="disable pixel noise")
    gen.add_argument("--force", action="store_true",
                     help="overwrite a directory with a mismatching manifest")
    gen.set_defaults(func=_cmd_generate)

    val = sub.add_parser("validate", help="re-check a generated directory")
    val.add_argument("dir")
    val.set_defaults(func=_cmd_validate)

    ins = sub.add_parser("inspect", help="print one instance record")
    ins.add_argument("dir")
    ins.add_argument("--index", type=int, required=True)
    ins.add_argument("--split", choices=SPLITS, default="train")
    ins.set_defaults(func=_cmd_inspect)

    ds = sub.add_parser("datasets", help="list built-in datasets")
    ds.set_defaults(func=_cmd_datasets)

    rep = sub.add_parser("report", help="write summary.csv and figures")
    rep.add_argument("dir")
    rep.add_argument("--out", required=True)
    rep.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GenerationError, dataset_io.DatasetIOError,
            instancegen.UnknownPartitionTagError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
