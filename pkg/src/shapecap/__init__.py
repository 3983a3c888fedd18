"""shapecap: generator for image-caption-agreement datasets.

Samples microworlds of colored shapes, renders them to 64x64 images,
produces controlled-English captions with exactly known truth values, and
emits train/validation/test splits whose constraints force zero-shot
recombination of concepts at evaluation time.
"""

from .geometry import PlacedShape, ShapeKind, bounding_box, contains, overlaps
from .instancegen import (
    BUILTIN_DATASETS,
    CaptionSpec,
    DatasetSpec,
    Instance,
    builtin_dataset,
    corrupt_caption,
    generate_instance,
    generate_instances,
    make_false_world,
    mix,
    mix64,
    restrict_partition,
    sample_caption,
)
from .language import parse, realize, tokenize, vocabulary
from .raster import apply_pixel_noise, rasterize, render, shade_color
from .semantics import (
    Conjunction,
    EntityPredicate,
    Existential,
    Quantified,
    Quantifier,
    Relation,
    Relational,
    evaluate,
    eval_quantifier,
    eval_relation,
    filter_entities,
)
from .worldgen import (
    Color,
    Entity,
    WorldModel,
    WorldSpec,
    place_entity,
    sample_entity,
    sample_world,
    trunc_normal,
)

__version__ = "0.1.0"
