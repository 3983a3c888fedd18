"""Acceptance gate: one test per release criterion.

Each test is a single pass/fail line in `pytest -v` output.  Heavy scans are
shared through a module-level cache so the 10,000-instances-per-split sweep
runs once per dataset split.
"""
import itertools
import json
import random
import time

import numpy as np
import pytest
from scipy import stats

from conftest import make_entity, make_world
from oracle import brute_force
from shapecap.dataset_io import validate_dataset, write_dataset_dir
from shapecap.geometry import ShapeKind
from shapecap.instancegen import (
    BUILTIN_DATASETS,
    HELDOUT_COMBINATIONS,
    SPLITS,
    builtin_dataset,
    generate_instance,
    generate_instances,
)
from shapecap.language import parse, vocabulary
from shapecap.raster import rasterize
from shapecap.semantics import (
    Conjunction,
    EntityPredicate,
    Existential,
    Quantified,
    Quantifier,
    Relation,
    Relational,
    eval_quantifier,
    evaluate,
)
from shapecap.worldgen import RGB, Color, WorldSpec, sample_entity

N_PER_SPLIT = 10_000
MASTER_SEED = 20_260_826

_HELDOUT_ALL = frozenset(
    c for combos in HELDOUT_COMBINATIONS.values() for c in combos)
_scan_cache = {}


def _scan(name, split):
    """One streaming pass over N_PER_SPLIT instances; summary only."""
    key = (name, split)
    if key in _scan_cache:
        return _scan_cache[key]
    ds = builtin_dataset(name)
    target = ds.world_spec(split).target_combinations
    start = time.perf_counter()
    summary = {
        "label_mismatches": 0,
        "round_trip_failures": 0,
        "positives": 0,
        "world_combos": set(),
        "world_counts": set(),
        "missing_target": 0,
    }
    for inst in generate_instances(ds, split, N_PER_SPLIT, MASTER_SEED,
                                   render_image=False):
        if evaluate(inst.caption_ast, inst.world) != inst.label:
            summary["label_mismatches"] += 1
        if parse(inst.caption_text) != inst.caption_ast:
            summary["round_trip_failures"] += 1
        summary["positives"] += bool(inst.label)
        combos = {(e.shape, e.color) for e in inst.world.entities}
        summary["world_combos"] |= combos
        summary["world_counts"].add(len(inst.world.entities))
        if target is not None and not combos & set(target):
            summary["missing_target"] += 1
    summary["seconds"] = time.perf_counter() - start
    _scan_cache[key] = summary
    return summary


# --- label soundness -------------------------------------------------------

@pytest.mark.parametrize("name", sorted(BUILTIN_DATASETS))
def test_label_soundness_10k_per_split_under_60s(name):
    total_seconds = 0.0
    for split in SPLITS:
        s = _scan(name, split)
        assert s["label_mismatches"] == 0, (name, split)
        total_seconds += s["seconds"]
    assert total_seconds < 60.0, f"{name}: {total_seconds:.1f}s"


# --- oracle equivalence ----------------------------------------------------

def test_oracle_equivalence_on_exhaustive_small_worlds():
    kinds = [ShapeKind.SQUARE, ShapeKind.CIRCLE, ShapeKind.TRIANGLE,
             ShapeKind.CROSS]
    colors = [Color.RED, Color.GREEN, Color.BLUE]
    preds = [EntityPredicate(shape=s, color=c)
             for s in kinds + [None] for c in colors + [None]]

    captions = [Existential(p) for p in preds]
    captions += [Relational(s, r, o)
                 for s in preds for r in Relation for o in preds]
    captions += [Quantified(q, r, b)
                 for q in Quantifier for r in preds for b in preds]
    rng = random.Random(0)
    simple = list(captions)
    captions += [Conjunction(rng.choice(simple), rng.choice(simple))
                 for _ in range(500)]

    grid = list(itertools.product(kinds, colors))
    worlds = [make_world()]
    for n in (1, 2, 3, 4):
        for _ in range(2):
            entities = [
                make_entity(*rng.choice(grid),
                            location=(rng.uniform(1, 63), rng.uniform(1, 63)))
                for _ in range(n)
            ]
            worlds.append(make_world(*entities))

    pairs = 0
    disagreements = 0
    for world in worlds:
        for caption in captions:
            pairs += 1
            if evaluate(caption, world) != brute_force(caption, world):
                disagreements += 1
    assert pairs >= 10_000, pairs
    assert disagreements == 0


# --- embedded dataset constants --------------------------------------------

def test_constants_shape_color_inventory():
    assert len(ShapeKind) == 8
    assert len(Color) == 7
    ds = builtin_dataset("multishape")
    assert len(ds.world_spec("train").allowed_combinations) == 56


def test_constants_oneshape_holdout_verbatim():
    ds = builtin_dataset("oneshape")
    assert len(ds.world_spec("train").allowed_combinations) == 50
    assert set(ds.world_spec("validation").target_combinations) == {
        (ShapeKind.SQUARE, Color.RED),
        (ShapeKind.TRIANGLE, Color.GREEN),
        (ShapeKind.CIRCLE, Color.BLUE),
    }
    assert set(ds.world_spec("test").target_combinations) == {
        (ShapeKind.RECTANGLE, Color.YELLOW),
        (ShapeKind.ELLIPSE, Color.CYAN),
        (ShapeKind.CROSS, Color.MAGENTA),
    }


def test_constants_count_holdouts():
    ms = builtin_dataset("multishape")
    assert set(ms.world_spec("train").count_choices) == {1, 2, 3, 5}
    assert set(ms.world_spec("validation").count_choices) == {4}
    assert set(ms.world_spec("test").count_choices) == {6}
    qf = builtin_dataset("quantification")
    assert set(qf.world_spec("train").count_choices) == {3, 4, 5, 7}
    assert set(qf.world_spec("validation").count_choices) == {6}
    assert set(qf.world_spec("test").count_choices) == {8}


def test_constants_quantifier_thresholds():
    for r in range(0, 6):
        for i in range(0, r + 1):
            assert eval_quantifier(Quantifier.A, r, i) == (i >= 1)
            assert eval_quantifier(Quantifier.NO, r, i) == (i == 0)
            assert eval_quantifier(Quantifier.TWO, r, i) == (i >= 2)
            assert eval_quantifier(Quantifier.THE, r, i) == (r == 1 and i == 1)
            assert eval_quantifier(Quantifier.MOST, r, i) == (2 * i > r)
            assert eval_quantifier(Quantifier.ALL, r, i) == (i == r)


# --- split exclusion -------------------------------------------------------

@pytest.mark.parametrize("name", sorted(BUILTIN_DATASETS))
def test_split_exclusion_train_never_sees_holdouts(name):
    ds = builtin_dataset(name)
    s = _scan(name, "train")
    if ds.world_spec("validation").target_combinations is not None:
        assert not s["world_combos"] & _HELDOUT_ALL
    for split in ("validation", "test"):
        held_counts = set(ds.world_spec(split).count_choices) - set(
            ds.world_spec("train").count_choices)
        assert not s["world_counts"] & held_counts


@pytest.mark.parametrize("name", sorted(BUILTIN_DATASETS))
def test_split_exclusion_eval_exercises_holdout(name):
    ds = builtin_dataset(name)
    for split in ("validation", "test"):
        s = _scan(name, split)
        spec = ds.world_spec(split)
        if spec.target_combinations is not None:
            assert s["missing_target"] == 0
            # the other split's held-out combos never leak in
            other = "test" if split == "validation" else "validation"
            leaked = s["world_combos"] & set(HELDOUT_COMBINATIONS[other])
            assert not leaked
        else:
            # count-based holdout: every eval world has a held-out count
            assert s["world_counts"] <= set(spec.count_choices)
            assert not s["world_counts"] & set(
                ds.world_spec("train").count_choices)


# --- round trip ------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(BUILTIN_DATASETS))
def test_round_trip_10k_captions(name):
    assert _scan(name, "train")["round_trip_failures"] == 0


def test_vocabulary_at_most_64_forms():
    assert len(vocabulary()) <= 64


# --- distribution fidelity -------------------------------------------------

def test_distribution_fidelity_entity_parameters():
    spec = builtin_dataset("multishape").world_spec("train")
    rng = random.Random(424242)
    n = 100_000
    sizes = np.empty(n)
    rotations = np.empty(n)
    shape_counts = {s: 0 for s in ShapeKind}
    color_counts = {c: 0 for c in Color}
    for k in range(n):
        e = sample_entity(spec, rng)
        sizes[k] = e.size
        rotations[k] = e.rotation
        shape_counts[e.shape] += 1
        color_counts[e.color] += 1
    assert sizes.mean() == pytest.approx(0.225, abs=0.005)
    assert rotations.mean() == pytest.approx(0.5, abs=0.005)
    assert stats.chisquare(list(shape_counts.values())).pvalue > 0.001
    assert stats.chisquare(list(color_counts.values())).pvalue > 0.001


@pytest.mark.parametrize("name", sorted(BUILTIN_DATASETS))
def test_distribution_fidelity_label_balance(name):
    for split in SPLITS:
        s = _scan(name, split)
        # binomial: 3 sigma around 0.5 at n = N_PER_SPLIT
        sigma = (0.25 / N_PER_SPLIT) ** 0.5
        rate = s["positives"] / N_PER_SPLIT
        assert abs(rate - 0.5) <= 3 * sigma, (name, split, rate)


# --- rendering checks ------------------------------------------------------

def test_rendering_modal_color_matches_named_color():
    for shape in ShapeKind:
        for color in Color:
            world = make_world(make_entity(shape, color, size=0.25))
            img = rasterize(world)
            mask = img.any(axis=2)
            assert mask.any(), (shape, color)
            vals, counts = np.unique(img[mask].reshape(-1, 3), axis=0,
                                     return_counts=True)
            modal = tuple(int(v) for v in vals[counts.argmax()])
            expected = tuple(round(v * 255) for v in RGB[color])
            assert modal == expected, (shape, color)


def test_rendering_centroid_within_1px():
    for shape in ("square", "circle", "rectangle", "ellipse"):
        world = make_world(make_entity(shape, "white", location=(29.0, 35.0),
                                       size=0.3, distortion=2.0))
        img = rasterize(world)
        ys, xs = np.nonzero(img.any(axis=2))
        assert abs(xs.mean() + 0.5 - 29.0) <= 1.0, shape
        assert abs(ys.mean() + 0.5 - 35.0) <= 1.0, shape


def test_rendering_area_within_5pct():
    # averaged over subpixel placements so edge quantization cancels out
    rng = random.Random(55)
    for size in (0.2, 0.25, 0.3):
        he = size * 64 / 2.0  # >= 5 px
        for shape, analytic in (("square", (2 * he) ** 2),
                                ("circle", np.pi * he ** 2)):
            painted = []
            for _ in range(50):
                loc = (rng.uniform(20.0, 44.0), rng.uniform(20.0, 44.0))
                img = rasterize(make_world(
                    make_entity(shape, "red", location=loc, size=size)))
                painted.append(int(img.any(axis=2).sum()))
            mean = sum(painted) / len(painted)
            assert mean == pytest.approx(analytic, rel=0.05), (shape, size)


# --- determinism -----------------------------------------------------------

def test_determinism_byte_identical_output_dirs(tmp_path):
    ds = builtin_dataset("oneshape")
    dirs = []
    for run in ("a", "b"):
        out = tmp_path / run
        write_dataset_dir(
            generate_instances(ds, "test", 30, master_seed=17),
            out, "both", ds, master_seed=17)
        dirs.append(out)
    names = sorted(p.name for p in dirs[0].iterdir())
    assert names == sorted(p.name for p in dirs[1].iterdir())
    for name in names:
        assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


def test_determinism_per_index_order_independent():
    ds = builtin_dataset("quantification")
    streamed = list(generate_instances(ds, "validation", 12, master_seed=23))
    for i in (0, 5, 11):
        alone = generate_instance(ds, "validation", i, master_seed=23)
        assert alone.caption_text == streamed[i].caption_text
        assert alone.world == streamed[i].world
        assert np.array_equal(alone.image, streamed[i].image)


# --- end-to-end validate ---------------------------------------------------

def test_validate_fresh_dataset_zero_violations(tmp_path):
    ds = builtin_dataset("spatial")
    out = tmp_path / "ds"
    write_dataset_dir(generate_instances(ds, "train", 25, master_seed=31),
                      out, "both", ds, master_seed=31)
    report = validate_dataset(out)
    assert report.violations == []
    assert report.checked_records == 25


def test_validate_single_byte_fault_one_violation(tmp_path):
    ds = builtin_dataset("spatial")
    out = tmp_path / "ds"
    write_dataset_dir(generate_instances(ds, "train", 25, master_seed=31),
                      out, "both", ds, master_seed=31)
    target = out / "train_labels.bin"
    data = bytearray(target.read_bytes())
    data[7] ^= 0x01
    target.write_bytes(bytes(data))
    report = validate_dataset(out)
    assert len(report.violations) == 1, report.violations
