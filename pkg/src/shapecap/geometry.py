"""Shape geometry: membership tests, extents, and overlap checks.

All coordinates are image coordinates: x grows right, y grows down. A placed
shape is defined by a canonical outline in a local frame centered on the
shape, scaled by its half extent, squeezed by its distortion ratio (width
divided by height, rectangles and ellipses only), and rotated by a fraction
of a full turn.

Canonical outlines (before rotation):
  - square / rectangle: axis-aligned box
  - triangle: isoceles triangle, apex up, inscribed in the box
  - pentagon: regular pentagon, apex up, circumradius = half extent
  - cross: plus sign of two bars, each one third of the box side wide
  - circle / ellipse: inscribed in the box
  - semicircle: upper half disk, flat edge horizontal through the center
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

TAU = 2.0 * math.pi


class ShapeKind(str, Enum):
    SQUARE = "square"
    RECTANGLE = "rectangle"
    TRIANGLE = "triangle"
    PENTAGON = "pentagon"
    CROSS = "cross"
    CIRCLE = "circle"
    SEMICIRCLE = "semicircle"
    ELLIPSE = "ellipse"


DISTORTABLE = frozenset({ShapeKind.RECTANGLE, ShapeKind.ELLIPSE})


@dataclass(frozen=True)
class PlacedShape:
    """A shape instance positioned in image coordinates."""

    kind: ShapeKind
    center: tuple
    half_extent: float
    distortion: float = 1.0
    rotation: float = 0.0

    @property
    def half_width(self) -> float:
        return self.half_extent

    @property
    def half_height(self) -> float:
        return self.half_extent / self.distortion


def _to_local(shape: PlacedShape, x, y):
    """Map world coordinates into the shape's unrotated local frame.

    Works elementwise on numpy arrays as well as on scalars.
    """
    theta = shape.rotation * TAU
    c, s = math.cos(theta), math.sin(theta)
    dx = x - shape.center[0]
    dy = y - shape.center[1]
    return dx * c + dy * s, -dx * s + dy * c


def _local_vertices(shape: PlacedShape):
    """Canonical polygon vertices in the local frame, or None for curved kinds."""
    hw, hh = shape.half_width, shape.half_height
    k = shape.kind
    if k in (ShapeKind.SQUARE, ShapeKind.RECTANGLE):
        return [(-hw, -hh), (hw, -hh), (hw, hh), (-hw, hh)]
    if k is ShapeKind.TRIANGLE:
        return [(0.0, -hh), (hw, hh), (-hw, hh)]
    if k is ShapeKind.PENTAGON:
        r = shape.half_extent
        out = []
        for i in range(5):
            a = -0.25 * TAU + i * TAU / 5.0
            out.append((r * math.cos(a), r * math.sin(a)))
        return out
    if k is ShapeKind.CROSS:
        h = shape.half_extent
        t = h / 3.0
        return [
            (-t, -h), (t, -h), (t, -t), (h, -t), (h, t), (t, t),
            (t, h), (-t, h), (-t, t), (-h, t), (-h, -t), (-t, -t),
        ]
    return None


def _in_convex(vertices, lx, ly):
    """Point-in-convex-polygon via consistent edge-side signs (boundary inside)."""
    has_pos = False
    has_neg = False
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % n]
        d = (x2 - x1) * (ly - y1) - (y2 - y1) * (lx - x1)
        has_pos = has_pos | (d > 0)
        has_neg = has_neg | (d < 0)
    return ~(has_pos & has_neg) if not isinstance(has_pos, bool) else not (has_pos and has_neg)


def contains(shape: PlacedShape, point) -> bool:
    """True iff the point lies inside the rotated, distorted shape boundary.

    Accepts numpy arrays for the point components and evaluates elementwise,
    which is how the rasterizer uses it.
    """
    x, y = point
    lx, ly = _to_local(shape, x, y)
    k = shape.kind
    if k in (ShapeKind.SQUARE, ShapeKind.RECTANGLE):
        return (abs(lx) <= shape.half_width) & (abs(ly) <= shape.half_height)
    if k in (ShapeKind.CIRCLE, ShapeKind.ELLIPSE):
        return (lx / shape.half_width) ** 2 + (ly / shape.half_height) ** 2 <= 1.0
    if k is ShapeKind.SEMICIRCLE:
        r = shape.half_extent
        return (lx * lx + ly * ly <= r * r) & (ly <= 0.0)
    if k is ShapeKind.CROSS:
        h = shape.half_extent
        t = h / 3.0
        return ((abs(lx) <= t) & (abs(ly) <= h)) | ((abs(ly) <= t) & (abs(lx) <= h))
    return _in_convex(_local_vertices(shape), lx, ly)


def _to_world(shape: PlacedShape, lx: float, ly: float):
    theta = shape.rotation * TAU
    c, s = math.cos(theta), math.sin(theta)
    cx, cy = shape.center
    return cx + lx * c - ly * s, cy + lx * s + ly * c


def bounding_box(shape: PlacedShape):
    """Tight axis-aligned bounding box as (xmin, ymin, xmax, ymax)."""
    cx, cy = shape.center
    k = shape.kind
    if k is ShapeKind.CIRCLE:
        r = shape.half_extent
        return (cx - r, cy - r, cx + r, cy + r)
    if k is ShapeKind.ELLIPSE:
        theta = shape.rotation * TAU
        c, s = math.cos(theta), math.sin(theta)
        hw, hh = shape.half_width, shape.half_height
        rx = math.hypot(hw * c, hh * s)
        ry = math.hypot(hw * s, hh * c)
        return (cx - rx, cy - ry, cx + rx, cy + ry)
    if k is ShapeKind.SEMICIRCLE:
        r = shape.half_extent
        theta = shape.rotation * TAU
        points = [_to_world(shape, -r, 0.0), _to_world(shape, r, 0.0)]
        # Arc extremes along world axes, if the extreme angle falls on the arc.
        for phi in (0.0, 0.25 * TAU, 0.5 * TAU, 0.75 * TAU):
            a = (phi - theta) % TAU
            if a >= 0.5 * TAU:
                points.append((cx + r * math.cos(phi), cy + r * math.sin(phi)))
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        return (min(xs), min(ys), max(xs), max(ys))
    points = [_to_world(shape, lx, ly) for lx, ly in _local_vertices(shape)]
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


def overlaps(a: PlacedShape, b: PlacedShape, padding: float = 0.0) -> bool:
    """Conservative overlap test on padding-inflated bounding boxes.

    May report overlap for shapes that do not touch, but never misses a true
    raster overlap.
    """
    ax0, ay0, ax1, ay1 = bounding_box(a)
    bx0, by0, bx1, by1 = bounding_box(b)
    p = padding
    return (
        ax0 - p <= bx1 + p
        and bx0 - p <= ax1 + p
        and ay0 - p <= by1 + p
        and by0 - p <= ay1 + p
    )
