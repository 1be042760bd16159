"""Deterministic top-down rasterizer for scene frames.

The 64x64 view covers a 24cm square of the workspace. The object silhouette
is the set of pixels whose vertical column intersects the object SDF; its
fill encodes class identity (hue per shape, brightness per size), rigidity
(diagonal stripe texture plus contact dents on soft objects) and orientation
(yaw-aligned stripes and a tilt-scaled marker dot). Fingertip markers are
drawn last in fixed per-finger colors. Everything is pure float math over
numpy arrays, so identical scenes rasterize to identical bytes.
"""

from __future__ import annotations

import numpy as np

from .objects import OBJECT_Z, ObjectSpec, object_bound, object_sdf
from .scene import TILT_MAX, SceneState

IMAGE_HW = 64
VIEW_HALF = 0.12
_N_ZSAMPLES = 9

_PROP_COLORS = np.array([
    [205, 92, 70],    # sphere
    [70, 160, 205],   # cylinder
    [205, 180, 60],   # cube
    [120, 200, 95],   # ellipsoid
], dtype=np.float64)

_GLYPH_COLORS = np.array([
    [210, 90, 90], [90, 140, 210], [220, 180, 70], [120, 200, 110],
    [190, 110, 210], [90, 200, 190], [230, 140, 60], [150, 150, 220],
    [200, 200, 120], [120, 120, 120],
], dtype=np.float64)

_FINGER_COLORS = np.array([
    [255, 70, 70], [70, 255, 70], [90, 130, 255], [255, 210, 70], [255, 90, 255],
], dtype=np.float64)

_STRIPE_PERIOD = 0.016

# pixel-center world coordinates; row 0 is +y (top of frame)
_COL_X = (np.arange(IMAGE_HW) + 0.5) / IMAGE_HW * (2 * VIEW_HALF) - VIEW_HALF
_ROW_Y = VIEW_HALF - (np.arange(IMAGE_HW) + 0.5) / IMAGE_HW * (2 * VIEW_HALF)
_PX = np.broadcast_to(_COL_X[None, :], (IMAGE_HW, IMAGE_HW))
_PY = np.broadcast_to(_ROW_Y[:, None], (IMAGE_HW, IMAGE_HW))
_IX = np.broadcast_to(np.arange(IMAGE_HW)[None, :], (IMAGE_HW, IMAGE_HW))
_IY = np.broadcast_to(np.arange(IMAGE_HW)[:, None], (IMAGE_HW, IMAGE_HW))


def _background() -> np.ndarray:
    img = np.empty((IMAGE_HW, IMAGE_HW, 3))
    grad = 18.0 * (_IY / (IMAGE_HW - 1.0))
    img[..., 0] = 38.0 + grad
    img[..., 1] = 40.0 + grad
    img[..., 2] = 46.0 + grad
    return img


def _column_depth(spec: ObjectSpec) -> np.ndarray:
    """Per-pixel minimum SDF along the vertical column through the object."""
    bound = object_bound(spec)
    zs = OBJECT_Z + np.linspace(-bound, bound, _N_ZSAMPLES)
    pts = np.empty((_N_ZSAMPLES, IMAGE_HW, IMAGE_HW, 3))
    pts[..., 0] = _PX
    pts[..., 1] = _PY
    pts[..., 2] = zs[:, None, None]
    return object_sdf(spec, pts).min(axis=0)


def _disk(cx: float, cy: float, radius_px: float) -> np.ndarray:
    px = (cx + VIEW_HALF) / (2 * VIEW_HALF) * IMAGE_HW - 0.5
    py = (VIEW_HALF - cy) / (2 * VIEW_HALF) * IMAGE_HW - 0.5
    return (_IX - px) ** 2 + (_IY - py) ** 2 <= radius_px ** 2


def render(scene: SceneState) -> np.ndarray:
    """Rasterize a scene to a [64,64,3] uint8 frame."""
    img = _background()
    spec = scene.object_spec

    if spec is not None:
        depth = _column_depth(spec)
        mask = depth < 0.0

        if spec.is_soft and scene.fingertips is not None:
            # dent the silhouette where fingertips press in
            tip_sdf = object_sdf(spec, scene.fingertips)
            for f in range(5):
                if tip_sdf[f] < 0.002:
                    mask &= ~_disk(scene.fingertips[f, 0], scene.fingertips[f, 1], 2.6)

        if mask.any():
            base = (_PROP_COLORS[spec.shape_id] if spec.dataset_kind == "props"
                    else _GLYPH_COLORS[spec.shape_id])
            brightness = 0.55 + 0.075 * spec.size_id if spec.dataset_kind == "props" else 0.85
            shade = 0.70 + 0.45 * np.clip(-depth / 0.02, 0.0, 1.0)
            color = base[None, None, :] * brightness * shade[..., None]

            # yaw-aligned stripes carry orientation into the fill
            u = ((_PX - spec.offset_x) * np.cos(spec.yaw)
                 + (_PY - spec.offset_y) * np.sin(spec.yaw))
            stripes = np.mod(u / _STRIPE_PERIOD, 2.0) < 1.0
            color = color + 22.0 * stripes[..., None]

            if spec.is_soft:
                texture = (_IX + _IY) % 6 < 2
                color = color - 40.0 * texture[..., None]

            img = np.where(mask[..., None], color, img)

        # orientation marker: direction = yaw, offset from center scales with tilt
        r = 0.012 + 0.050 * (spec.tilt / TILT_MAX)
        mx = spec.offset_x + r * np.cos(spec.yaw)
        my = spec.offset_y + r * np.sin(spec.yaw)
        marker = _disk(mx, my, 2.2)
        img[marker] = (235.0, 235.0, 235.0)

    if scene.fingertips is not None:
        for f in range(5):
            dot = _disk(scene.fingertips[f, 0], scene.fingertips[f, 1], 1.8)
            img[dot] = _FINGER_COLORS[f]

    return np.clip(np.rint(img), 0, 255).astype(np.uint8)
