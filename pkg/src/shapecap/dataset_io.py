"""Persistence: dataset directories, manifests, tensor archives, validation.

Directory layout (per generation run):
    manifest.json            format version, config snapshot, seed, digests
    vocab.txt                one token per line, line number = token id
    {split}.jsonl            one record per instance (jsonl+png format)
    {split}_{index}.png      8-bit RGB render (jsonl+png format)
    {split}_images.bin       N x H x W x 3 uint8, instance-major (tensor format)
    {split}_captions.bin     N x L uint32 little-endian, 0-padded (tensor format)
    {split}_labels.bin       N uint8, 1 = agree (tensor format)
"""
from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image as PILImage

from . import instancegen, language, semantics, worldgen
from .geometry import ShapeKind
from .semantics import caption_from_dict, caption_to_dict, evaluate
from .worldgen import Color, Entity, WorldModel, WorldSpec

FORMAT_VERSION = 1
FORMATS = ("jsonl+png", "tensor", "both")


class DatasetIOError(Exception):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    message: str


@dataclass
class ValidationReport:
    violations: list
    checked_records: int = 0
    checked_files: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def _round6(x: float) -> float:
    return round(float(x), 6)


def entity_to_dict(e: Entity) -> dict:
    return {
        "color": e.color.value,
        "distortion": _round6(e.distortion),
        "location": [_round6(e.location[0]), _round6(e.location[1])],
        "rotation": _round6(e.rotation),
        "shade": _round6(e.shade),
        "shape": e.shape.value,
        "size": _round6(e.size),
    }


def entity_from_dict(d: dict) -> Entity:
    return Entity(
        shape=ShapeKind(d["shape"]),
        color=Color(d["color"]),
        location=(d["location"][0], d["location"][1]),
        size=d["size"],
        distortion=d["distortion"],
        rotation=d["rotation"],
        shade=d["shade"],
    )


def world_to_dict(w: WorldModel) -> dict:
    return {
        "entities": [entity_to_dict(e) for e in w.entities],
        "pixel_noise_sigma": _round6(w.pixel_noise_sigma),
    }


def world_from_dict(d: dict) -> WorldModel:
    return WorldModel(
        entities=tuple(entity_from_dict(e) for e in d["entities"]),
        pixel_noise_sigma=d["pixel_noise_sigma"],
    )


def instance_record(inst: instancegen.Instance) -> dict:
    return {
        "ast": caption_to_dict(inst.caption_ast),
        "caption": inst.caption_text,
        "index": inst.index,
        "label": bool(inst.label),
        "partition_tag": inst.partition_tag,
        "sub_seed": inst.sub_seed,
        "world": world_to_dict(inst.world),
    }


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _png_bytes(image: np.ndarray) -> bytes:
    buf = io.BytesIO()
    PILImage.fromarray(image, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


# ---------------------------------------------------------------------------
# dataset spec <-> config dict


def world_spec_to_dict(ws: WorldSpec) -> dict:
    return {
        "count_choices": list(ws.count_choices),
        "allowed_combinations": [[s.value, c.value] for s, c in ws.allowed_combinations],
        "target_combinations": (
            [[s.value, c.value] for s, c in ws.target_combinations]
            if ws.target_combinations else None
        ),
        "size_range": list(ws.size_range),
        "distortion_range": list(ws.distortion_range),
        "shade_sigma": ws.shade_sigma,
        "pixel_noise_sigma": ws.pixel_noise_sigma,
        "collision_padding": ws.collision_padding,
        "image_size": ws.image_size,
        "max_placement_attempts": ws.max_placement_attempts,
        "max_world_attempts": ws.max_world_attempts,
    }


def world_spec_from_dict(d: dict) -> WorldSpec:
    combos = tuple((ShapeKind(s), Color(c)) for s, c in d["allowed_combinations"])
    targets = d.get("target_combinations")
    return WorldSpec(
        count_choices=tuple(d["count_choices"]),
        allowed_combinations=combos,
        target_combinations=(
            tuple((ShapeKind(s), Color(c)) for s, c in targets) if targets else None
        ),
        size_range=tuple(d.get("size_range", worldgen.SIZE_RANGE)),
        distortion_range=tuple(d.get("distortion_range", worldgen.DISTORTION_RANGE)),
        shade_sigma=d.get("shade_sigma", worldgen.SHADE_SIGMA),
        pixel_noise_sigma=d.get("pixel_noise_sigma", worldgen.PIXEL_NOISE_SIGMA),
        collision_padding=d.get("collision_padding", 2.0),
        image_size=d.get("image_size", worldgen.IMAGE_SIZE),
        max_placement_attempts=d.get("max_placement_attempts", 200),
        max_world_attempts=d.get("max_world_attempts", 50),
    )


def dataset_spec_to_dict(ds) -> dict:
    if hasattr(ds, "components"):
        return {
            "name": ds.name,
            "mixture": {
                "components": [dataset_spec_to_dict(c) for c in ds.components],
                "weights": list(ds.weights),
            },
        }
    if hasattr(ds, "base"):
        return {
            "name": ds.name,
            "restriction": {"base": dataset_spec_to_dict(ds.base), "tag": ds.tag},
        }
    cs = ds.caption_spec
    return {
        "name": ds.name,
        "image_size": ds.image_size,
        "positive_probability": ds.positive_probability,
        "false_world_probability": ds.false_world_probability,
        "corruption_strategies": list(ds.corruption_strategies),
        "caption": {
            "pattern_weights": {k: w for k, w in cs.pattern_weights},
            "granularity_weights": {k: w for k, w in cs.granularity_weights},
            "quantifiers": [q.value for q in cs.quantifiers],
            "relations": [r.value for r in cs.relations],
            "relation_margin": cs.relation_margin,
        },
        "splits": {split: world_spec_to_dict(ws) for split, ws in ds.world_specs},
    }


def dataset_spec_from_dict(d: dict):
    if "mixture" in d:
        components = [dataset_spec_from_dict(c) for c in d["mixture"]["components"]]
        return instancegen.mix(components, d["mixture"]["weights"])
    if "restriction" in d:
        base = dataset_spec_from_dict(d["restriction"]["base"])
        return instancegen.restrict_partition(base, d["restriction"]["tag"])
    c = d["caption"]
    cs = instancegen.CaptionSpec(
        pattern_weights=tuple(c["pattern_weights"].items()),
        granularity_weights=tuple(
            c.get("granularity_weights",
                  {g: 1.0 for g in instancegen.GRANULARITIES}).items()
        ),
        quantifiers=tuple(semantics.Quantifier(q) for q in
                          c.get("quantifiers", [q.value for q in semantics.Quantifier])),
        relations=tuple(semantics.Relation(r) for r in
                        c.get("relations", [r.value for r in semantics.Relation])),
        relation_margin=c.get("relation_margin", 4.0),
    )
    return instancegen.DatasetSpec(
        name=d["name"],
        world_specs=tuple(
            (split, world_spec_from_dict(ws)) for split, ws in d["splits"].items()
        ),
        caption_spec=cs,
        corruption_strategies=tuple(d.get("corruption_strategies", ())),
        false_world_probability=d.get("false_world_probability", 0.5),
        positive_probability=d.get("positive_probability", 0.5),
        image_size=d.get("image_size", 64),
    )


def load_dataset_config(path) -> "instancegen.DatasetSpec":
    with open(path, "r", encoding="utf-8") as fh:
        return dataset_spec_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# writing


def write_dataset_dir(instances, path, fmt: str, dataset, master_seed: int,
                      force: bool = False) -> dict:
    """Write instances plus manifest; returns the manifest dict."""
    if fmt not in FORMATS:
        raise DatasetIOError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    instances = list(instances)

    config_snapshot = dataset_spec_to_dict(dataset)
    manifest_path = path / "manifest.json"
    if manifest_path.exists() and not force:
        old = json.loads(manifest_path.read_text(encoding="utf-8"))
        if old.get("config") != config_snapshot or old.get("master_seed") != master_seed:
            raise DatasetIOError(
                f"{path}: existing manifest does not match this run; use force to overwrite"
            )

    by_split = {}
    for inst in instances:
        by_split.setdefault(inst.split, []).append(inst)
    for split_instances in by_split.values():
        split_instances.sort(key=lambda i: i.index)

    files = {}

    def emit(name: str, data: bytes):
        (path / name).write_bytes(data)
        files[name] = _sha256(data)

    vocab = language.vocabulary()
    emit("vocab.txt", ("\n".join(vocab) + "\n").encode("utf-8"))

    for split, split_instances in sorted(by_split.items()):
        if fmt in ("jsonl+png", "both"):
            lines = [_canonical_json(instance_record(i)) for i in split_instances]
            emit(f"{split}.jsonl", ("\n".join(lines) + "\n").encode("utf-8")
                 if lines else b"")
            for inst in split_instances:
                if inst.image is None:
                    raise DatasetIOError("jsonl+png export needs rendered instances")
                emit(f"{split}_{inst.index}.png", _png_bytes(inst.image))
        if fmt in ("tensor", "both"):
            _emit_tensors(split, split_instances, vocab, emit)

    manifest = {
        "format_version": FORMAT_VERSION,
        "dataset": dataset.name,
        "format": fmt,
        "config": config_snapshot,
        "master_seed": master_seed,
        "splits": {split: len(v) for split, v in sorted(by_split.items())},
        "vocabulary": "vocab.txt",
        "files": files,
    }
    manifest_path.write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    return manifest


def _token_ids(caption_text: str, vocab_index: dict):
    return [vocab_index[t] for t in language.tokenize(caption_text)]


def _emit_tensors(split, split_instances, vocab, emit):
    vocab_index = {tok: i for i, tok in enumerate(vocab)}
    n = len(split_instances)
    token_rows = [_token_ids(i.caption_text, vocab_index) for i in split_instances]
    max_len = max((len(r) for r in token_rows), default=0)

    captions = np.zeros((n, max_len), dtype="<u4")
    for row, ids in zip(captions, token_rows):
        row[: len(ids)] = ids
    labels = np.array([1 if i.label else 0 for i in split_instances], dtype=np.uint8)
    if any(i.image is None for i in split_instances):
        raise DatasetIOError("tensor export needs rendered instances")
    images = np.stack([i.image for i in split_instances]) if n else np.zeros(
        (0, 64, 64, 3), dtype=np.uint8
    )
    emit(f"{split}_images.bin", images.tobytes())
    emit(f"{split}_captions.bin", captions.tobytes())
    emit(f"{split}_labels.bin", labels.tobytes())


# ---------------------------------------------------------------------------
# validation


def read_manifest(path) -> dict:
    manifest_path = Path(path) / "manifest.json"
    if not manifest_path.exists():
        raise DatasetIOError(f"no manifest.json under {path}")
    return json.loads(manifest_path.read_text(encoding="utf-8"))


def validate_dataset(path) -> ValidationReport:
    """Re-check digests and every stored record against the interpreter.

    A file whose content produced specific record-level violations is not
    additionally reported as a digest mismatch, so a single corrupted byte
    yields exactly one violation.
    """
    path = Path(path)
    manifest = read_manifest(path)
    violations = []
    checked_records = 0
    flagged_files = set()

    # Record-level checks over jsonl splits.
    for split in manifest["splits"]:
        jsonl_name = f"{split}.jsonl"
        if jsonl_name not in manifest["files"]:
            continue
        jsonl_path = path / jsonl_name
        if not jsonl_path.exists():
            violations.append(Violation("missing-file", jsonl_name, "file not found"))
            flagged_files.add(jsonl_name)
            continue
        with open(jsonl_path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh):
                if not line.strip():
                    continue
                checked_records += 1
                location = f"{jsonl_name}:{lineno}"
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    violations.append(Violation("corrupt-record", location, str(exc)))
                    flagged_files.add(jsonl_name)
                    continue
                n = len(violations)
                _check_record(record, location, violations)
                if len(violations) > n:
                    flagged_files.add(jsonl_name)

    # Tensor cross-checks.
    vocab = _read_vocab(path, manifest, violations, flagged_files)
    if vocab is not None:
        for split in manifest["splits"]:
            _check_tensors(path, manifest, split, vocab, violations, flagged_files)

    # Digest checks for everything not already flagged by content.
    checked_files = 0
    for name, digest in manifest["files"].items():
        file_path = path / name
        if not file_path.exists():
            if name not in flagged_files:
                violations.append(Violation("missing-file", name, "file not found"))
            continue
        checked_files += 1
        if name in flagged_files:
            continue
        actual = _sha256(file_path.read_bytes())
        if actual != digest:
            violations.append(
                Violation("digest-mismatch", name,
                          f"expected {digest[:12]}…, found {actual[:12]}…")
            )

    return ValidationReport(violations=violations, checked_records=checked_records,
                            checked_files=checked_files)


def _check_record(record, location, violations):
    try:
        ast = caption_from_dict(record["ast"])
        world = world_from_dict(record["world"])
    except (KeyError, ValueError) as exc:
        violations.append(Violation("corrupt-record", location, str(exc)))
        return
    if evaluate(ast, world) != record["label"]:
        violations.append(
            Violation("label-mismatch", location,
                      "stored label disagrees with evaluate(ast, world)")
        )
    try:
        parsed = language.parse(record["caption"])
    except language.LanguageError as exc:
        violations.append(Violation("parse-failure", location, str(exc)))
        return
    if parsed != ast:
        violations.append(
            Violation("caption-mismatch", location,
                      "re-parsed caption disagrees with stored ast")
        )


def _read_vocab(path, manifest, violations, flagged_files):
    name = manifest.get("vocabulary", "vocab.txt")
    vocab_path = Path(path) / name
    if not vocab_path.exists():
        violations.append(Violation("missing-file", name, "file not found"))
        flagged_files.add(name)
        return None
    return vocab_path.read_text(encoding="utf-8").splitlines()


def _check_tensors(path, manifest, split, vocab, violations, flagged_files):
    captions_name = f"{split}_captions.bin"
    labels_name = f"{split}_labels.bin"
    jsonl_name = f"{split}.jsonl"
    if captions_name not in manifest["files"]:
        return
    n = manifest["splits"][split]
    captions_path = path / captions_name
    labels_path = path / labels_name
    if not captions_path.exists() or not labels_path.exists():
        return  # missing-file reported by the digest pass
    raw = np.frombuffer(captions_path.read_bytes(), dtype="<u4")
    if n and raw.size % n != 0:
        violations.append(
            Violation("tensor-shape", captions_name, f"size {raw.size} not divisible by {n}")
        )
        flagged_files.add(captions_name)
        return
    ids = raw.reshape(n, -1) if n else raw.reshape(0, 0)
    if ids.size and int(ids.max()) >= len(vocab):
        violations.append(
            Violation("token-id-range", captions_name,
                      f"token id {int(ids.max())} outside vocabulary")
        )
        flagged_files.add(captions_name)
    labels = np.frombuffer(labels_path.read_bytes(), dtype=np.uint8)
    if labels.size != n:
        violations.append(
            Violation("tensor-shape", labels_name, f"{labels.size} labels for {n} instances")
        )
        flagged_files.add(labels_name)
        return

    jsonl_path = path / jsonl_name
    if not jsonl_path.exists():
        return
    with open(jsonl_path, "r", encoding="utf-8") as fh:
        for i, line in enumerate(fh):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                return  # already reported by the record pass
            decoded = " ".join(vocab[t] for t in ids[i] if t != 0)
            expected = " ".join(language.tokenize(record["caption"]))
            if decoded != expected:
                violations.append(
                    Violation("caption-mismatch", f"{captions_name}[{i}]",
                              "tensor caption disagrees with jsonl caption")
                )
                flagged_files.add(captions_name)
            if bool(labels[i]) != record["label"]:
                violations.append(
                    Violation("label-mismatch", f"{labels_name}[{i}]",
                              "tensor label disagrees with jsonl label")
                )
                flagged_files.add(labels_name)
