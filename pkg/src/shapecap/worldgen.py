"""World sampling: entity attribute draws and collision-free placement."""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum

from .geometry import DISTORTABLE, PlacedShape, ShapeKind, bounding_box

IMAGE_SIZE = 64

SIZE_RANGE = (0.15, 0.3)
DISTORTION_RANGE = (2.0, 3.0)
SHADE_SIGMA = 0.5
PIXEL_NOISE_SIGMA = 0.1


class Color(str, Enum):
    RED = "red"
    GREEN = "green"
    BLUE = "blue"
    YELLOW = "yellow"
    MAGENTA = "magenta"
    CYAN = "cyan"
    WHITE = "white"


# Maximally separated pure hues on a black background.
RGB = {
    Color.RED: (1.0, 0.0, 0.0),
    Color.GREEN: (0.0, 1.0, 0.0),
    Color.BLUE: (0.0, 0.0, 1.0),
    Color.YELLOW: (1.0, 1.0, 0.0),
    Color.MAGENTA: (1.0, 0.0, 1.0),
    Color.CYAN: (0.0, 1.0, 1.0),
    Color.WHITE: (1.0, 1.0, 1.0),
}

ALL_COMBINATIONS = tuple((s, c) for s in ShapeKind for c in Color)


class GenerationError(Exception):
    """World generation exhausted its retry budget."""


class PlacementError(GenerationError):
    """No collision-free, in-frame location found for an entity."""


class TruncationError(GenerationError):
    """Truncated normal sampling never hit the requested interval."""


@dataclass(frozen=True)
class Entity:
    shape: ShapeKind
    color: Color
    location: tuple
    size: float
    distortion: float
    rotation: float
    shade: float

    def placed_shape(self, image_size: int = IMAGE_SIZE) -> PlacedShape:
        # Object size is the shape's box side as a fraction of the image side.
        return PlacedShape(
            kind=self.shape,
            center=self.location,
            half_extent=self.size * image_size / 2.0,
            distortion=self.distortion,
            rotation=self.rotation,
        )


@dataclass(frozen=True)
class WorldModel:
    entities: tuple
    pixel_noise_sigma: float = 0.0


@dataclass(frozen=True)
class WorldSpec:
    """Per-split generator constraints for world sampling."""

    count_choices: tuple = (1,)
    allowed_combinations: tuple = ALL_COMBINATIONS
    target_combinations: tuple = None  # one entity drawn from here when set
    size_range: tuple = SIZE_RANGE
    distortion_range: tuple = DISTORTION_RANGE
    shade_sigma: float = SHADE_SIGMA
    pixel_noise_sigma: float = PIXEL_NOISE_SIGMA
    collision_padding: float = 2.0
    image_size: int = IMAGE_SIZE
    max_placement_attempts: int = 200
    max_world_attempts: int = 50

    def __post_init__(self):
        if not self.count_choices:
            raise ValueError("count_choices must be nonempty")
        if not self.allowed_combinations:
            raise ValueError("allowed_combinations must be nonempty")


def trunc_normal(mu: float, sigma: float, lo: float, hi: float,
                 rng: random.Random, max_draws: int = 1000) -> float:
    """Normal draw resampled until it falls inside [lo, hi]."""
    if not lo < hi:
        raise ValueError("lo must be < hi")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    for _ in range(max_draws):
        v = rng.gauss(mu, sigma)
        if lo <= v <= hi:
            return v
    raise TruncationError(
        f"no draw from normal({mu}, {sigma}) in [{lo}, {hi}] after {max_draws} tries"
    )


def sample_entity(spec: WorldSpec, rng: random.Random, pool: tuple = None) -> Entity:
    """Draw one entity with all attributes; location is pre-placement."""
    pool = pool if pool is not None else spec.allowed_combinations
    shape, color = pool[rng.randrange(len(pool))]
    size = rng.uniform(*spec.size_range)
    distortion = rng.uniform(*spec.distortion_range) if shape in DISTORTABLE else 1.0
    return Entity(
        shape=shape,
        color=color,
        location=(rng.uniform(0.0, spec.image_size), rng.uniform(0.0, spec.image_size)),
        size=size,
        distortion=distortion,
        rotation=rng.random(),
        shade=trunc_normal(0.0, spec.shade_sigma, -1.0, 1.0, rng),
    )


def _entity_box(entity: Entity, image_size: int):
    return bounding_box(entity.placed_shape(image_size))


def _box_fits(box, existing_boxes, pad: float, image_size: int) -> bool:
    x0, y0, x1, y1 = box
    if x0 < 0 or y0 < 0 or x1 > image_size or y1 > image_size:
        return False
    for bx0, by0, bx1, by1 in existing_boxes:
        if (x0 - pad <= bx1 + pad and bx0 - pad <= x1 + pad
                and y0 - pad <= by1 + pad and by0 - pad <= y1 + pad):
            return False
    return True


def place_entity(world_entities, proto: Entity, spec: WorldSpec,
                 rng: random.Random) -> Entity:
    """Resample the proto's location until it is in-frame and collision-free."""
    size = spec.image_size
    existing_boxes = [_entity_box(e, size) for e in world_entities]
    # The box depends on the location only by translation; precompute the
    # center-relative extents so each attempt is plain arithmetic.
    x0, y0, x1, y1 = _entity_box(proto, size)
    cx, cy = proto.location
    rel = (x0 - cx, y0 - cy, x1 - cx, y1 - cy)
    lx, ly = proto.location
    for _ in range(spec.max_placement_attempts):
        box = (lx + rel[0], ly + rel[1], lx + rel[2], ly + rel[3])
        if _box_fits(box, existing_boxes, spec.collision_padding, size):
            return replace(proto, location=(lx, ly))
        lx, ly = rng.uniform(0.0, size), rng.uniform(0.0, size)
    raise PlacementError(
        f"no free slot after {spec.max_placement_attempts} attempts "
        f"({len(world_entities)} entities placed)"
    )


def sample_world(spec: WorldSpec, rng: random.Random) -> WorldModel:
    """Sample a full world; retries whole worlds on placement failure."""
    for _ in range(spec.max_world_attempts):
        count = spec.count_choices[rng.randrange(len(spec.count_choices))]
        protos = []
        if spec.target_combinations:
            protos.append(sample_entity(spec, rng, pool=spec.target_combinations))
        while len(protos) < count:
            protos.append(sample_entity(spec, rng))
        # Largest first: random sequential packing succeeds far more often.
        protos.sort(key=lambda e: -e.size)
        placed = []
        try:
            for proto in protos:
                placed.append(place_entity(placed, proto, spec, rng))
        except PlacementError:
            continue
        return WorldModel(entities=tuple(placed), pixel_noise_sigma=spec.pixel_noise_sigma)
    raise GenerationError(
        f"world sampling failed {spec.max_world_attempts} times; spec over-constrained?"
    )
