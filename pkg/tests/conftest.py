import random

import pytest

from shapecap.geometry import ShapeKind
from shapecap.worldgen import Color, Entity, WorldModel


def make_entity(shape, color, location=(32.0, 32.0), size=0.25, distortion=1.0,
                rotation=0.0, shade=0.0):
    return Entity(
        shape=ShapeKind(shape),
        color=Color(color),
        location=tuple(float(v) for v in location),
        size=size,
        distortion=distortion,
        rotation=rotation,
        shade=shade,
    )


def make_world(*entities, pixel_noise_sigma=0.0):
    return WorldModel(entities=tuple(entities), pixel_noise_sigma=pixel_noise_sigma)


@pytest.fixture
def rng():
    return random.Random(1234)
