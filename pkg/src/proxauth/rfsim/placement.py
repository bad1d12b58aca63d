"""Seeded placement of device pairs at controlled separations.

The co-located ("authentic") regime puts the login device at the desk
(plus a small jitter) with the mobile within the threshold of it, the way
a phone sits next to the machine it vouches for. The separated
("unauthorized") regime models a login attempt from somewhere else on the
floor: both devices land at uniform-feasible positions with the pair
distance drawn uniformly in [threshold + gray gap, room diagonal].
Distances inside the gray gap are never produced.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import GeometryError
from .environment import LOGIN, MOBILE, DevicePose, Environment

AUTHENTIC = "authentic"
UNAUTHORIZED = "unauthorized"

_THETA_TRIES = 4096


def _far_corner_distance(x: float, y: float, w: float, h: float) -> float:
    return max(math.hypot(x - cx, y - cy)
               for cx, cy in ((0.0, 0.0), (w, 0.0), (0.0, h), (w, h)))


def _origin_boxes(w: float, h: float, d: float) -> list[tuple[float, float, float, float]]:
    """Bounding boxes (x0, y0, x1, y1) of origins that can reach distance d.

    One box per far corner: an origin can place its partner toward corner
    (px, py) only if it is at least d away from it, and that region's
    bounding box inside the rectangle is exact because the corner distance
    is monotone in both coordinates.
    """
    dx = math.sqrt(max(d * d - h * h, 0.0))
    dy = math.sqrt(max(d * d - w * w, 0.0))
    if dx >= w or dy >= h:
        return []
    boxes = []
    for px, py in ((w, h), (0.0, h), (w, 0.0), (0.0, 0.0)):
        x0, x1 = (0.0, w - dx) if px == w else (dx, w)
        y0, y1 = (0.0, h - dy) if py == h else (dy, h)
        boxes.append((x0, y0, x1, y1))
    return boxes


def place_apart(rng: np.random.Generator, bounds: tuple[float, float],
                d: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Two uniform-feasible points exactly d apart inside the bounds."""
    w, h = bounds
    if d > math.hypot(w, h):
        raise GeometryError(f"distance {d:.3f} m exceeds the bounds diagonal")
    boxes = _origin_boxes(w, h, d)
    if not boxes:
        raise GeometryError(f"no feasible placement for distance {d:.3f} m")
    areas = np.array([(x1 - x0) * (y1 - y0) for x0, y0, x1, y1 in boxes])
    cumulative = np.cumsum(areas / areas.sum())
    while True:
        i = int(np.searchsorted(cumulative, rng.random()))
        x0, y0, x1, y1 = boxes[i]
        x = rng.uniform(x0, x1)
        y = rng.uniform(y0, y1)
        # union-of-boxes de-duplication keeps the origin uniform
        multiplicity = sum(1 for bx0, by0, bx1, by1 in boxes
                           if bx0 <= x <= bx1 and by0 <= y <= by1)
        if rng.random() * multiplicity >= 1.0:
            continue
        if _far_corner_distance(x, y, w, h) < d:
            continue
        for _ in range(_THETA_TRIES):
            theta = rng.uniform(0.0, 2.0 * math.pi)
            bx = x + d * math.cos(theta)
            by = y + d * math.sin(theta)
            if 0.0 <= bx <= w and 0.0 <= by <= h:
                return (x, y), (bx, by)
        # pathological arc; take a fresh origin


def _desk_origin(env: Environment, rng: np.random.Generator) -> tuple[float, float]:
    """The desk plus placement jitter, clipped to the floor."""
    w, h = env.bounds
    jitter = env.config.desk_jitter_m if env.config is not None else 0.0
    x, y = env.desk_m
    if jitter > 0.0:
        x += rng.normal(0.0, jitter)
        y += rng.normal(0.0, jitter)
    return (min(max(x, 0.0), w), min(max(y, 0.0), h))


def place_pair(env: Environment, regime: str, rng: np.random.Generator,
               login_id: str = "rpi-login", mobile_id: str = "rpi-mobile",
               ) -> tuple[DevicePose, DevicePose]:
    """Login/mobile pose pair whose separation follows the given regime."""
    w, h = env.bounds
    diag = env.diagonal_m
    if regime == AUTHENTIC:
        hi = min(env.threshold_m, diag)
        if hi <= 0.0:
            raise GeometryError("bounds admit no co-located placement")
        d = hi - rng.uniform(0.0, hi)  # uniform in (0, hi]
        a = _desk_origin(env, rng)
        for _ in range(_THETA_TRIES):
            theta = rng.uniform(0.0, 2.0 * math.pi)
            b = (a[0] + d * math.cos(theta), a[1] + d * math.sin(theta))
            if 0.0 <= b[0] <= w and 0.0 <= b[1] <= h:
                return (DevicePose(login_id, LOGIN, a),
                        DevicePose(mobile_id, MOBILE, b))
        raise GeometryError(
            f"no bearing keeps the mobile within bounds {env.bounds} at {d:.2f} m")
    if regime == UNAUTHORIZED:
        lo = env.unauthorized_min_m
        if lo >= diag:
            raise GeometryError(
                f"bounds diagonal {diag:.2f} m cannot separate devices by {lo:.2f} m")
        d = rng.uniform(lo, diag)
        a, b = place_apart(rng, env.bounds, d)
        return (DevicePose(login_id, LOGIN, a), DevicePose(mobile_id, MOBILE, b))
    raise GeometryError(f"unknown placement regime {regime!r}")
