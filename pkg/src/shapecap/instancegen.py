"""Instance assembly: agreeing captions, false worlds, caption corruption,
built-in dataset definitions, mixing, and partition restriction.

Every instance is fully determined by (master_seed, split, index): the
sub-seed is a 64-bit avalanche mix of the three, so any subset of indices
can be generated concurrently and in any order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import ShapeKind
from .raster import render
from .semantics import (
    Conjunction,
    EntityPredicate,
    Existential,
    Quantified,
    Quantifier,
    Relation,
    Relational,
    evaluate,
    predicates,
    quantifiers,
)
from .worldgen import (
    ALL_COMBINATIONS,
    Color,
    GenerationError,
    WorldModel,
    WorldSpec,
    sample_world,
)

SPLITS = ("train", "validation", "test")

PATTERNS = ("existential", "relational", "quantified", "conjunction")
GRANULARITIES = ("color+shape", "shape-only", "color+hypernym")

CORRUPTION_STRATEGIES = (
    "changed_shape",
    "changed_color",
    "changed_both",
    "swapped_direction",
    "subject_random_attrs",
    "object_random_attrs",
    "random_attrs",
    "random_existing_attrs",
    "false_world",
)

_STRATEGY_TAGS = {
    "changed_shape": "I: changed shape",
    "changed_color": "I: changed color",
    "changed_both": "I: changed both",
    "swapped_direction": "I: swapped direction",
    "subject_random_attrs": "I: subject random attr.",
    "object_random_attrs": "I: object random attr.",
    "random_attrs": "I: random attr.",
    "random_existing_attrs": "I: random existing attr.",
    "false_world": "I: false world",
}

_MASK64 = (1 << 64) - 1


class UnsatisfiableCaptionError(GenerationError):
    """No true caption found for the sampled world within the retry cap."""


class NoFalseVariantError(GenerationError):
    """A corruption strategy found no falsifying value within the retry cap."""


class InapplicableStrategyError(GenerationError):
    """Corruption strategy does not apply to this caption pattern."""


class UnknownPartitionTagError(KeyError):
    pass


class PartitionStarvationError(GenerationError):
    """Rejection sampling for a partition tag never (or too rarely) matches."""


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def mix64(*parts: int) -> int:
    """Order-sensitive 64-bit avalanche mix of integer parts."""
    h = 0
    for part in parts:
        h = _splitmix64(h ^ (part & _MASK64))
    return h


@dataclass(frozen=True)
class CaptionSpec:
    """Constraints on the caption sampler."""

    pattern_weights: tuple = (("existential", 1.0),)
    granularity_weights: tuple = tuple((g, 1.0) for g in GRANULARITIES)
    quantifiers: tuple = tuple(Quantifier)
    relations: tuple = tuple(Relation)
    relation_margin: float = 4.0
    max_attempts: int = 60

    def __post_init__(self):
        weights = dict(self.pattern_weights)
        if not any(w > 0 for w in weights.values()):
            raise ValueError("at least one pattern weight must be positive")
        if any(w < 0 for w in weights.values()):
            raise ValueError("pattern weights must be nonnegative")


@dataclass(frozen=True)
class DatasetSpec:
    name: str
    world_specs: tuple  # (("train", WorldSpec), ...)
    caption_spec: CaptionSpec
    corruption_strategies: tuple = ()
    false_world_probability: float = 0.5
    positive_probability: float = 0.5
    image_size: int = 64

    def world_spec(self, split: str) -> WorldSpec:
        table = dict(self.world_specs)
        if split not in table:
            raise KeyError(f"unknown split {split!r}")
        return table[split]

    def partition_tags(self, split: str = "train"):
        tags = {"correct instances", "incorrect instances",
                "C: no hypernyms", "C: only hypernyms", "C: mixed hypernyms",
                "I: false world"}
        tags.update(_STRATEGY_TAGS[s] for s in self.corruption_strategies)
        patterns = dict(self.caption_spec.pattern_weights)
        if patterns.get("quantified", 0) > 0:
            tags.update(f"instances with {q.value}" for q in self.caption_spec.quantifiers)
        return tags


@dataclass(frozen=True)
class Instance:
    image: np.ndarray
    caption_text: str
    caption_ast: object
    world: WorldModel
    label: bool
    partition_tag: str
    sub_seed: int
    split: str
    index: int


# ---------------------------------------------------------------------------
# caption sampling


def _weighted_choice(rng: random.Random, weighted: tuple):
    items = [k for k, w in weighted if w > 0]
    weights = [w for _, w in weighted if w > 0]
    return rng.choices(items, weights=weights, k=1)[0]


def _pred_for_entity(entity, granularity: str) -> EntityPredicate:
    if granularity == "color+shape":
        return EntityPredicate(shape=entity.shape, color=entity.color)
    if granularity == "shape-only":
        return EntityPredicate(shape=entity.shape, color=None)
    return EntityPredicate(shape=None, color=entity.color)


def _axis_gap(rel: Relation, subj, obj) -> float:
    if rel is Relation.LEFT_OF:
        return obj.location[0] - subj.location[0]
    if rel is Relation.RIGHT_OF:
        return subj.location[0] - obj.location[0]
    if rel is Relation.ABOVE:
        return obj.location[1] - subj.location[1]
    return subj.location[1] - obj.location[1]


def _granularity(cs: CaptionSpec, rng: random.Random, allow_full: bool = True) -> str:
    weighted = cs.granularity_weights
    if not allow_full:
        weighted = tuple((g, w) for g, w in weighted if g != "color+shape")
        if not any(w > 0 for _, w in weighted):
            weighted = (("shape-only", 1.0), ("color+hypernym", 1.0))
    return _weighted_choice(rng, weighted)


def _sample_existential(world, cs, rng, target_index):
    gran = _granularity(cs, rng)
    if gran == "color+shape" and target_index is not None:
        entity = world.entities[target_index]
    else:
        entity = rng.choice(world.entities)
    return Existential(_pred_for_entity(entity, gran))


def _sample_relational(world, cs, rng, target_index):
    if len(world.entities) < 2:
        return None
    rel = rng.choice(list(cs.relations))
    pairs = [
        (i, j)
        for i in range(len(world.entities))
        for j in range(len(world.entities))
        if i != j
        and _axis_gap(rel, world.entities[i], world.entities[j]) >= cs.relation_margin
    ]
    if target_index is not None:
        pairs = [p for p in pairs if target_index in p]
    if not pairs:
        return None
    i, j = rng.choice(pairs)
    subj_full = target_index is None or i == target_index
    obj_full = target_index is None or j == target_index
    subject = _pred_for_entity(world.entities[i], _granularity(cs, rng, allow_full=subj_full))
    obj = _pred_for_entity(world.entities[j], _granularity(cs, rng, allow_full=obj_full))
    return Relational(subject, rel, obj)


_RESTRICTOR_GRANULARITIES = ("hypernym", "shape-only", "color+hypernym")
_BODY_GRANULARITIES = ("color+hypernym", "shape-only", "color+shape")


def _restrictor_pred(entity, granularity: str) -> EntityPredicate:
    if granularity == "hypernym":
        return EntityPredicate()
    return _pred_for_entity(entity, granularity)


def _sample_quantified(world, cs, rng, pool):
    q = rng.choice(list(cs.quantifiers))
    anchor = rng.choice(world.entities)
    restrictor = _restrictor_pred(anchor, rng.choice(_RESTRICTOR_GRANULARITIES))
    members = [e for e in world.entities if restrictor.matches(e)]
    if not members:  # vacuous restrictor rejected for every quantifier
        return None
    if q is Quantifier.NO:
        # Body values come from a pool combination compatible with the
        # restrictor, so the caption is falsifiable rather than a tautology.
        compatible = [
            (s, c) for s, c in pool
            if restrictor.shape in (None, s) and restrictor.color in (None, c)
        ]
        if not compatible:
            return None
        shape, color = compatible[rng.randrange(len(compatible))]
        body_gran = rng.choice(_BODY_GRANULARITIES)
        body = EntityPredicate(
            shape=shape if body_gran != "color+hypernym" else None,
            color=color if body_gran != "shape-only" else None,
        )
    else:
        body = _pred_for_entity(rng.choice(members), rng.choice(_BODY_GRANULARITIES))
    if body == restrictor:  # tautological body gives no training signal
        return None
    caption = Quantified(q, restrictor, body)
    return caption if evaluate(caption, world) else None


def sample_caption(world: WorldModel, cs: CaptionSpec, rng: random.Random,
                   target_index: int = None, pool: tuple = ALL_COMBINATIONS):
    """Sample a caption that is true of the world, or raise after a cap."""
    for _ in range(cs.max_attempts):
        pattern = _weighted_choice(rng, cs.pattern_weights)
        caption = None
        if pattern == "existential":
            caption = _sample_existential(world, cs, rng, target_index)
        elif pattern == "relational":
            caption = _sample_relational(world, cs, rng, target_index)
        elif pattern == "quantified":
            caption = _sample_quantified(world, cs, rng, pool)
        else:
            caption = _sample_conjunction(world, cs, rng, target_index, pool)
        if caption is not None and evaluate(caption, world):
            return caption
    raise UnsatisfiableCaptionError(
        f"no agreeing caption after {cs.max_attempts} attempts"
    )


def _sample_conjunction(world, cs, rng, target_index, pool):
    child_weights = tuple(
        (k, w) for k, w in cs.pattern_weights if k in ("existential", "quantified")
    )
    if not any(w > 0 for _, w in child_weights):
        child_weights = (("existential", 1.0),)
    children = []
    for _ in range(2):
        pattern = _weighted_choice(rng, child_weights)
        if pattern == "existential":
            child = _sample_existential(world, cs, rng, target_index)
        else:
            child = _sample_quantified(world, cs, rng, pool)
        if child is None or not evaluate(child, world):
            return None
        children.append(child)
    return Conjunction(children[0], children[1])


# ---------------------------------------------------------------------------
# negative pathways


def make_false_world(caption, ws: WorldSpec, rng: random.Random,
                     max_attempts: int = 200) -> WorldModel:
    """Sample fresh worlds until the caption is false of one."""
    for _ in range(max_attempts):
        world = sample_world(ws, rng)
        if not evaluate(caption, world):
            return world
    raise GenerationError(
        f"caption still true after {max_attempts} resampled worlds"
    )


def _target_pred(caption):
    """The predicate a value-changing corruption operates on."""
    if isinstance(caption, Existential):
        return caption.pred
    if isinstance(caption, Quantified):
        return caption.body
    return None


def _with_target_pred(caption, pred):
    if isinstance(caption, Existential):
        return Existential(pred)
    return replace(caption, body=pred)


def strategy_applicable(strategy: str, caption) -> bool:
    if isinstance(caption, Conjunction):
        return strategy in ("random_attrs",)
    if strategy in ("swapped_direction", "subject_random_attrs", "object_random_attrs"):
        return isinstance(caption, Relational)
    if isinstance(caption, Relational):
        return False
    pred = _target_pred(caption)
    if strategy == "changed_shape":
        return pred.shape is not None
    if strategy == "changed_color":
        return pred.color is not None
    if strategy == "changed_both":
        return pred.fully_specified
    if strategy == "random_existing_attrs":
        return isinstance(caption, Existential)
    if strategy == "random_attrs":
        return True
    return strategy == "false_world"


def _pool_shapes(pool):
    return sorted({s for s, _ in pool}, key=lambda s: s.value)


def _pool_colors(pool):
    return sorted({c for _, c in pool}, key=lambda c: c.value)


def _random_pool_pred(pool, rng):
    gran = rng.choice(GRANULARITIES)
    if gran == "color+shape":
        shape, color = pool[rng.randrange(len(pool))]
        return EntityPredicate(shape=shape, color=color)
    if gran == "shape-only":
        return EntityPredicate(shape=rng.choice(_pool_shapes(pool)))
    return EntityPredicate(color=rng.choice(_pool_colors(pool)))


def _changed_pred(pred, strategy, pool, rng):
    """A variant of pred with the selected field(s) replaced, pool-legal."""
    if strategy == "changed_shape":
        options = [
            s for s in _pool_shapes(pool)
            if s != pred.shape and (pred.color is None or (s, pred.color) in pool)
        ]
        if not options:
            return None
        return replace(pred, shape=rng.choice(options))
    if strategy == "changed_color":
        options = [
            c for c in _pool_colors(pool)
            if c != pred.color and (pred.shape is None or (pred.shape, c) in pool)
        ]
        if not options:
            return None
        return replace(pred, color=rng.choice(options))
    options = [
        (s, c) for s, c in pool if s != pred.shape and c != pred.color
    ]
    if not options:
        return None
    shape, color = options[rng.randrange(len(options))]
    return EntityPredicate(shape=shape, color=color)


def corrupt_caption(caption, world: WorldModel, strategy: str, rng: random.Random,
                    pool: tuple = ALL_COMBINATIONS, max_attempts: int = 50):
    """Modify the caption so it is false of the world; verified, never assumed."""
    if not strategy_applicable(strategy, caption):
        raise InapplicableStrategyError(f"{strategy} does not apply to {type(caption).__name__}")
    for _ in range(max_attempts):
        candidate = _corrupt_once(caption, world, strategy, rng, pool)
        if candidate is not None and not evaluate(candidate, world):
            return candidate
    raise NoFalseVariantError(f"{strategy} found no false variant")


def _corrupt_once(caption, world, strategy, rng, pool):
    if isinstance(caption, Conjunction):
        side = rng.randrange(2)
        child = caption.left if side == 0 else caption.right
        if not strategy_applicable(strategy, child):
            return None
        try:
            corrupted = corrupt_caption(child, world, strategy, rng, pool, max_attempts=10)
        except GenerationError:
            return None
        return Conjunction(corrupted, caption.right) if side == 0 else Conjunction(caption.left, corrupted)
    if strategy == "swapped_direction":
        return replace(caption, relation=caption.relation.inverse())
    if strategy == "subject_random_attrs":
        return replace(caption, subject=_random_pool_pred(pool, rng))
    if strategy == "object_random_attrs":
        return replace(caption, object=_random_pool_pred(pool, rng))
    if strategy == "random_attrs":
        return _with_target_pred(caption, _random_pool_pred(pool, rng))
    if strategy == "random_existing_attrs":
        present_shapes = {e.shape for e in world.entities}
        present_colors = {e.color for e in world.entities}
        held = {(e.shape, e.color) for e in world.entities}
        options = sorted(
            (
                (s, c)
                for s in present_shapes
                for c in present_colors
                if (s, c) not in held and (s, c) in pool
            ),
            key=lambda sc: (sc[0].value, sc[1].value),
        )
        if not options:
            return None
        shape, color = options[rng.randrange(len(options))]
        return _with_target_pred(caption, EntityPredicate(shape=shape, color=color))
    pred = _changed_pred(_target_pred(caption), strategy, pool, rng)
    return None if pred is None else _with_target_pred(caption, pred)


# ---------------------------------------------------------------------------
# instance generation


def _caption_pool(ws: WorldSpec) -> tuple:
    """Combinations a caption may mention in this split."""
    return ws.allowed_combinations + (ws.target_combinations or ())


def _find_target(world: WorldModel, ws: WorldSpec):
    if not ws.target_combinations:
        return None
    targets = set(ws.target_combinations)
    for i, e in enumerate(world.entities):
        if (e.shape, e.color) in targets:
            return i
    return None


def _hypernym_tag(caption) -> str:
    preds = predicates(caption)
    used = [p.uses_hypernym for p in preds]
    if all(used):
        return "C: only hypernyms"
    if not any(used):
        return "C: no hypernyms"
    return "C: mixed hypernyms"


def _split_id(split: str) -> int:
    try:
        return SPLITS.index(split)
    except ValueError:
        raise KeyError(f"unknown split {split!r}") from None


def generate_instance(ds: DatasetSpec, split: str, index: int, master_seed: int,
                      render_image: bool = True) -> Instance:
    """Build one fully labeled instance; deterministic in (seed, split, index)."""
    sub_seed = mix64(master_seed, _split_id(split), index)
    if hasattr(ds, "components"):  # mixture: delegate to a drawn component
        comp_rng = random.Random(mix64(sub_seed, 0xC0))
        component = _weighted_choice(comp_rng, tuple(zip(ds.components, ds.weights)))
        inner = generate_instance(component, split, index, master_seed, render_image)
        return replace(inner, partition_tag=f"{component.name}: {inner.partition_tag}")
    if hasattr(ds, "base"):  # partition restriction: rejection over the base
        return _generate_restricted(ds, split, index, master_seed, render_image)

    rng = random.Random(sub_seed)
    ws = ds.world_spec(split)
    cs = ds.caption_spec
    pool = _caption_pool(ws)
    label = rng.random() < ds.positive_probability

    world = caption = None
    for _ in range(20):
        candidate_world = sample_world(ws, rng)
        try:
            caption = sample_caption(
                candidate_world, cs, rng,
                target_index=_find_target(candidate_world, ws), pool=pool,
            )
        except UnsatisfiableCaptionError:
            continue
        world = candidate_world
        break
    if world is None:
        raise GenerationError(
            f"{ds.name}/{split}[{index}]: no (world, caption) pair found"
        )

    if label:
        tag = _hypernym_tag(caption)
    else:
        strategies = [s for s in ds.corruption_strategies
                      if s != "false_world" and strategy_applicable(s, caption)]
        use_false_world = (not strategies) or rng.random() < ds.false_world_probability
        if not use_false_world:
            strategy = rng.choice(strategies)
            try:
                caption = corrupt_caption(caption, world, strategy, rng, pool)
                tag = _STRATEGY_TAGS[strategy]
            except NoFalseVariantError:
                use_false_world = True
        if use_false_world:
            world = make_false_world(caption, ws, rng)
            tag = _STRATEGY_TAGS["false_world"]

    assert evaluate(caption, world) == label, "accidental agreement slipped through"

    image = None
    if render_image:
        noise_rng = np.random.Generator(np.random.PCG64(mix64(sub_seed, 0x5EED)))
        image = render(world, noise_rng, ds.image_size)

    from .language import realize  # local import avoids a module cycle at startup

    return Instance(
        image=image,
        caption_text=realize(caption),
        caption_ast=caption,
        world=world,
        label=label,
        partition_tag=tag,
        sub_seed=sub_seed,
        split=split,
        index=index,
    )


def generate_instances(ds: DatasetSpec, split: str, count: int, master_seed: int,
                       render_image: bool = True):
    """Yield instances 0..count-1 in index order."""
    if hasattr(ds, "base"):
        yield from _restricted_stream(ds, split, count, master_seed, render_image)
        return
    for index in range(count):
        yield generate_instance(ds, split, index, master_seed, render_image)


# ---------------------------------------------------------------------------
# mixing and partition restriction


@dataclass(frozen=True)
class MixtureSpec:
    name: str
    components: tuple
    weights: tuple
    image_size: int = 64

    def partition_tags(self, split: str = "train"):
        tags = set()
        for comp in self.components:
            tags.update(f"{comp.name}: {t}" for t in comp.partition_tags(split))
        return tags


def mix(specs, weights) -> MixtureSpec:
    """Weighted interleaving of dataset generators, delegating per instance."""
    specs = tuple(specs)
    weights = tuple(weights)
    if not specs:
        raise ValueError("specs must be nonempty")
    if len(specs) != len(weights) or any(w <= 0 for w in weights):
        raise ValueError("weights must be positive, one per spec")
    sizes = {s.image_size for s in specs}
    if len(sizes) != 1:
        raise ValueError(f"incompatible image sizes across components: {sorted(sizes)}")
    name = "mix(" + "+".join(s.name for s in specs) + ")"
    return MixtureSpec(name=name, components=specs, weights=weights,
                       image_size=sizes.pop())


def _tag_matches(instance: Instance, tag: str) -> bool:
    if tag == "correct instances":
        return instance.label
    if tag == "incorrect instances":
        return not instance.label
    if tag.startswith("instances with "):
        word = tag[len("instances with "):]
        return any(q.value == word for q in quantifiers(instance.caption_ast))
    return instance.partition_tag == tag


@dataclass(frozen=True)
class RestrictedSpec:
    base: DatasetSpec
    tag: str
    max_scan_factor: int = 400
    min_scan: int = 20000

    @property
    def name(self):
        return f"{self.base.name}[{self.tag}]"

    @property
    def image_size(self):
        return self.base.image_size

    def partition_tags(self, split: str = "train"):
        return {self.tag}


def restrict_partition(ds: DatasetSpec, tag: str) -> RestrictedSpec:
    """Generator producing only instances bearing the given partition tag."""
    if tag not in ds.partition_tags():
        raise UnknownPartitionTagError(
            f"{tag!r} is not a partition tag of {ds.name}; "
            f"known: {sorted(ds.partition_tags())}"
        )
    return RestrictedSpec(base=ds, tag=tag)


def _restricted_stream(rs: RestrictedSpec, split, count, master_seed, render_image):
    matched = 0
    scanned = 0
    limit = max(rs.min_scan, count * rs.max_scan_factor)
    while matched < count:
        if scanned >= limit:
            raise PartitionStarvationError(
                f"tag {rs.tag!r}: {matched} matches in {scanned} instances"
            )
        candidate = generate_instance(rs.base, split, scanned, master_seed,
                                      render_image=False)
        scanned += 1
        if _tag_matches(candidate, rs.tag):
            if render_image:
                candidate = generate_instance(rs.base, split, scanned - 1,
                                              master_seed, render_image=True)
            yield replace(candidate, index=matched)
            matched += 1


def _generate_restricted(rs: RestrictedSpec, split, index, master_seed, render_image):
    for instance in _restricted_stream(rs, split, index + 1, master_seed, render_image):
        if instance.index == index:
            return instance
    raise PartitionStarvationError(f"tag {rs.tag!r} starved before index {index}")


# ---------------------------------------------------------------------------
# built-in datasets

_VALIDATION_HELDOUT = (
    (ShapeKind.SQUARE, Color.RED),
    (ShapeKind.TRIANGLE, Color.GREEN),
    (ShapeKind.CIRCLE, Color.BLUE),
)
_TEST_HELDOUT = (
    (ShapeKind.RECTANGLE, Color.YELLOW),
    (ShapeKind.ELLIPSE, Color.CYAN),
    (ShapeKind.CROSS, Color.MAGENTA),
)
_TRAIN_COMBINATIONS = tuple(
    combo for combo in ALL_COMBINATIONS
    if combo not in _VALIDATION_HELDOUT and combo not in _TEST_HELDOUT
)

HELDOUT_COMBINATIONS = {"validation": _VALIDATION_HELDOUT, "test": _TEST_HELDOUT}

BUILTIN_DATASETS = ("oneshape", "multishape", "spatial", "quantification")


def _combo_split_worlds(count_choices) -> tuple:
    """Shape-color holdout: eval worlds carry one held-out target entity."""
    return (
        ("train", WorldSpec(count_choices=count_choices,
                            allowed_combinations=_TRAIN_COMBINATIONS)),
        ("validation", WorldSpec(count_choices=count_choices,
                                 allowed_combinations=_TRAIN_COMBINATIONS,
                                 target_combinations=_VALIDATION_HELDOUT)),
        ("test", WorldSpec(count_choices=count_choices,
                           allowed_combinations=_TRAIN_COMBINATIONS,
                           target_combinations=_TEST_HELDOUT)),
    )


def _count_split_worlds(train, validation, test) -> tuple:
    return (
        ("train", WorldSpec(count_choices=train)),
        ("validation", WorldSpec(count_choices=validation)),
        ("test", WorldSpec(count_choices=test)),
    )


def builtin_dataset(name: str) -> DatasetSpec:
    if name == "oneshape":
        return DatasetSpec(
            name="oneshape",
            world_specs=_combo_split_worlds((1,)),
            caption_spec=CaptionSpec(pattern_weights=(("existential", 1.0),)),
            corruption_strategies=("changed_shape", "changed_color", "changed_both"),
        )
    if name == "multishape":
        return DatasetSpec(
            name="multishape",
            world_specs=_count_split_worlds((1, 2, 3, 5), (4,), (6,)),
            caption_spec=CaptionSpec(pattern_weights=(("existential", 1.0),)),
            corruption_strategies=("random_attrs", "random_existing_attrs"),
        )
    if name == "spatial":
        return DatasetSpec(
            name="spatial",
            world_specs=_combo_split_worlds((2, 3, 4)),
            caption_spec=CaptionSpec(pattern_weights=(("relational", 1.0),)),
            corruption_strategies=(
                "swapped_direction", "subject_random_attrs", "object_random_attrs",
            ),
        )
    if name == "quantification":
        return DatasetSpec(
            name="quantification",
            world_specs=_count_split_worlds((3, 4, 5, 7), (6,), (8,)),
            caption_spec=CaptionSpec(pattern_weights=(("quantified", 1.0),)),
            corruption_strategies=("random_attrs",),
        )
    raise KeyError(f"unknown dataset {name!r}; built-ins: {BUILTIN_DATASETS}")
