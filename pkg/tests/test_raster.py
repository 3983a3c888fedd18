import numpy as np
import pytest

from conftest import make_entity, make_world
from shapecap.raster import apply_pixel_noise, rasterize, render, shade_color
from shapecap.worldgen import RGB, Color


def test_shade_color_identity():
    assert shade_color(Color.RED, 0.0) == pytest.approx((1.0, 0.0, 0.0))


def test_shade_color_blends_toward_white():
    assert shade_color(Color.RED, 1.0) == pytest.approx((1.0, 0.5, 0.5))


def test_shade_color_blends_toward_black():
    assert shade_color(Color.RED, -1.0) == pytest.approx((0.5, 0.0, 0.0))


def test_rasterize_shape_and_dtype():
    world = make_world(make_entity("square", "red"))
    img = rasterize(world)
    assert img.shape == (64, 64, 3)
    assert img.dtype == np.uint8


def test_rasterize_black_background():
    img = rasterize(make_world())
    assert not img.any()


def test_rasterize_square_exact_pixels():
    # half extent 8 centered at 32: pixel centers 24.5..39.5 are inside
    world = make_world(make_entity("square", "green", size=0.25))
    img = rasterize(world)
    painted = np.argwhere(img.any(axis=2))
    assert painted[:, 0].min() == 24 and painted[:, 0].max() == 39
    assert painted[:, 1].min() == 24 and painted[:, 1].max() == 39
    assert len(painted) == 256
    assert tuple(img[30, 30]) == (0, 255, 0)


def test_rasterize_circle_area():
    world = make_world(make_entity("circle", "blue", size=0.25))
    img = rasterize(world)
    painted = int(img.any(axis=2).sum())
    assert painted == pytest.approx(np.pi * 8.0**2, rel=0.05)


def test_rasterize_later_entity_paints_over():
    a = make_entity("square", "red", size=0.25)
    b = make_entity("square", "blue", size=0.25)
    img = rasterize(make_world(a, b))
    assert tuple(img[32, 32]) == (0, 0, 255)


def test_rasterize_foreground_is_named_color():
    for color in Color:
        world = make_world(make_entity("square", color, size=0.25))
        img = rasterize(world)
        mask = img.any(axis=2)
        expected = tuple(round(v * 255) for v in RGB[color])
        vals, counts = np.unique(img[mask].reshape(-1, 3), axis=0,
                                 return_counts=True)
        assert tuple(vals[counts.argmax()]) == expected


def test_apply_pixel_noise_bounds_and_determinism():
    img = rasterize(make_world(make_entity("circle", "red")))
    g1 = np.random.Generator(np.random.PCG64(7))
    g2 = np.random.Generator(np.random.PCG64(7))
    n1 = apply_pixel_noise(img, 0.1, g1)
    n2 = apply_pixel_noise(img, 0.1, g2)
    assert np.array_equal(n1, n2)
    assert n1.dtype == np.uint8
    assert not np.array_equal(n1, img)


def test_apply_pixel_noise_zero_sigma_is_identity():
    img = rasterize(make_world(make_entity("circle", "red")))
    out = apply_pixel_noise(img, 0.0, np.random.Generator(np.random.PCG64(7)))
    assert np.array_equal(out, img)


def test_render_noisy_world_requires_rng():
    world = make_world(make_entity("pentagon", "cyan"), pixel_noise_sigma=0.1)
    with pytest.raises(ValueError):
        render(world)


def test_render_noise_free_world_is_plain_raster():
    world = make_world(make_entity("pentagon", "cyan"))
    assert np.array_equal(render(world), rasterize(world))


def test_painted_centroid_matches_center():
    for shape in ("square", "circle", "rectangle", "ellipse"):
        world = make_world(make_entity(shape, "white", location=(30.0, 26.0),
                                       size=0.28, distortion=2.0))
        img = rasterize(world)
        ys, xs = np.nonzero(img.any(axis=2))
        # +0.5: pixel index k covers [k, k+1)
        assert xs.mean() + 0.5 == pytest.approx(30.0, abs=1.0)
        assert ys.mean() + 0.5 == pytest.approx(26.0, abs=1.0)
