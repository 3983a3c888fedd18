"""Rendering of world models to 8-bit RGB images.

Rendering is hard-edged: a pixel belongs to a shape iff the pixel center
passes the geometry membership test. Shading blends entity colors toward
white or black by at most half the distance, so the nearest named color of
any shaded pixel is still the entity's base color.
"""
from __future__ import annotations

import math

import numpy as np

from .geometry import bounding_box, contains
from .worldgen import RGB, IMAGE_SIZE, Color, WorldModel


def shade_color(base: Color, shade: float):
    """Blend an rgb triple toward white (shade > 0) or black (shade < 0)."""
    r, g, b = RGB[base]
    if shade > 0:
        f = shade * 0.5
        return (r + (1 - r) * f, g + (1 - g) * f, b + (1 - b) * f)
    if shade < 0:
        f = 1.0 + shade * 0.5
        return (r * f, g * f, b * f)
    return (r, g, b)


def _quantize(img: np.ndarray) -> np.ndarray:
    return np.rint(np.clip(img, 0.0, 1.0) * 255.0).astype(np.uint8)


def rasterize(world: WorldModel, image_size: int = IMAGE_SIZE) -> np.ndarray:
    """Render a noise-free image; later entities paint over earlier ones."""
    img = np.zeros((image_size, image_size, 3), dtype=np.float64)
    for entity in world.entities:
        ps = entity.placed_shape(image_size)
        x0, y0, x1, y1 = bounding_box(ps)
        xi0 = max(0, int(math.floor(x0 - 0.5)))
        yi0 = max(0, int(math.floor(y0 - 0.5)))
        xi1 = min(image_size - 1, int(math.ceil(x1)))
        yi1 = min(image_size - 1, int(math.ceil(y1)))
        if xi1 < xi0 or yi1 < yi0:
            continue
        xs = np.arange(xi0, xi1 + 1, dtype=np.float64) + 0.5
        ys = np.arange(yi0, yi1 + 1, dtype=np.float64) + 0.5
        gx, gy = np.meshgrid(xs, ys)
        mask = contains(ps, (gx, gy))
        region = img[yi0:yi1 + 1, xi0:xi1 + 1]
        region[mask] = shade_color(entity.color, entity.shade)
    return _quantize(img)


def _trunc_normal_field(shape, sigma: float, rng: np.random.Generator) -> np.ndarray:
    out = rng.normal(0.0, sigma, size=shape)
    bad = (out < -1.0) | (out > 1.0)
    while bad.any():
        out[bad] = rng.normal(0.0, sigma, size=int(bad.sum()))
        bad = (out < -1.0) | (out > 1.0)
    return out


def apply_pixel_noise(img: np.ndarray, sigma: float,
                      rng: np.random.Generator) -> np.ndarray:
    """Add independent truncated-normal noise per channel value."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0:
        return img.copy()
    noise = _trunc_normal_field(img.shape, sigma, rng)
    return _quantize(img.astype(np.float64) / 255.0 + noise)


def render(world: WorldModel, rng: np.random.Generator = None,
           image_size: int = IMAGE_SIZE) -> np.ndarray:
    """Rasterize and, when the world asks for it, add pixel noise."""
    img = rasterize(world, image_size)
    if world.pixel_noise_sigma > 0:
        if rng is None:
            raise ValueError("noise rendering needs an rng")
        img = apply_pixel_noise(img, world.pixel_noise_sigma, rng)
    return img
